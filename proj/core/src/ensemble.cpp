#include "pmst/ensemble.hpp"

#include <cmath>
#include <string>

namespace pmst {

namespace {

int common_dim(const std::vector<PureState>& states) {
  if (states.empty()) throw InvalidInput("ensemble needs at least one state");
  const int d = states.front().dim();
  for (const auto& s : states)
    if (s.dim() != d) throw InvalidInput("states have mixed dimensions");
  return d;
}

double min_basis_component(const PureState& psi) {
  double m = 1.0;
  for (int k = 0; k < psi.dim(); ++k)
    m = std::min(m, std::norm(psi.amplitudes()[k]));
  return m;
}

}  // namespace

WeightedEnsemble::WeightedEnsemble(std::vector<PureState> states_,
                                   std::vector<double> weights_, bool completed_,
                                   const Tolerances& tol)
    : states(std::move(states_)), weights(std::move(weights_)),
      completed(completed_) {
  dim = common_dim(states);
  if (weights.size() != states.size())
    throw InvalidInput("one weight per state required");
  for (double w : weights)
    if (!(w > 0.0)) throw InvalidInput("weights must be positive");
  if (completed) {
    Matrix acc = Matrix::Zero(dim, dim);
    double total = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      acc += weights[i] * states[i].projector().matrix();
      total += weights[i];
    }
    const double resid =
        (acc - Matrix::Identity(dim, dim) / dim).cwiseAbs().maxCoeff();
    if (resid > tol.completion_residual)
      throw InvalidInput("ensemble does not resolve the identity (residual " +
                         std::to_string(resid) + ")");
    if (std::abs(total - 1.0) > tol.completion_residual)
      throw InvalidInput("weights do not sum to one");
  }
}

WeightedEnsemble complete_ensemble(const std::vector<PureState>& states,
                                   const Tolerances& tol) {
  const int d = common_dim(states);
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& s : states) sum += s.projector().matrix();

  Eigen::SelfAdjointEigenSolver<Matrix> sum_eig(sum);
  const double lambda = 1.0 / (d * sum_eig.eigenvalues().maxCoeff());
  const Matrix v = Matrix::Identity(d, d) / d - lambda * sum;

  Eigen::SelfAdjointEigenSolver<Matrix> v_eig(v);
  const double vmax = std::max(v_eig.eigenvalues().maxCoeff(), 0.0);

  std::vector<PureState> out = states;
  std::vector<double> weights(states.size(), lambda);
  for (int i = 0; i < d; ++i) {
    const double beta = v_eig.eigenvalues()[i];
    if (beta > tol.completion_rank_rel * vmax && beta > 0.0) {
      out.emplace_back(v_eig.eigenvectors().col(i).eval());
      weights.push_back(beta);
    }
  }
  return WeightedEnsemble(std::move(out), std::move(weights), true, tol);
}

PureState z_state(int dim, int k) { return PureState::basis(dim, k); }

PureState x_state(int dim, int k) {
  if (k < 0 || k + 1 >= dim) throw InvalidInput("X_k index out of range");
  Vector v = Vector::Zero(dim);
  v[k] = v[k + 1] = 1.0 / std::sqrt(2.0);
  return PureState(std::move(v));
}

PureState y_state(int dim, int k) {
  if (k < 0 || k + 1 >= dim) throw InvalidInput("Y_k index out of range");
  Vector v = Vector::Zero(dim);
  v[k] = 1.0 / std::sqrt(2.0);
  v[k + 1] = Complex(0.0, 1.0 / std::sqrt(2.0));
  return PureState(std::move(v));
}

PureState xx_state(int dim, int k) {
  if (k < 0 || k + 2 >= dim) throw InvalidInput("XX_k index out of range");
  Vector v = Vector::Zero(dim);
  v[k] = v[k + 1] = v[k + 2] = 1.0 / std::sqrt(3.0);
  return PureState(std::move(v));
}

PureState yy_state(int dim, int k) {
  if (k < 0 || k + 2 >= dim) throw InvalidInput("YY_k index out of range");
  Vector v = Vector::Zero(dim);
  v[k] = Complex(0.0, 1.0 / std::sqrt(3.0));
  v[k + 1] = 1.0 / std::sqrt(3.0);
  v[k + 2] = Complex(0.0, 1.0 / std::sqrt(3.0));
  return PureState(std::move(v));
}

FiducialSet fiducial_set(int dim) {
  if (dim < 3)
    throw InvalidInput("fiducial set needs dimension >= 3 (XX/YY families)");
  FiducialSet t;
  t.dim = dim;
  for (int k = 0; k < dim; ++k) t.z.push_back(z_state(dim, k));
  for (int k = 0; k + 1 < dim; ++k) {
    t.x.push_back(x_state(dim, k));
    t.y.push_back(y_state(dim, k));
  }
  for (int k = 0; k + 2 < dim; ++k) {
    t.xx.push_back(xx_state(dim, k));
    t.yy.push_back(yy_state(dim, k));
  }
  return t;
}

std::vector<PureState> FiducialSet::all() const {
  std::vector<PureState> out;
  out.reserve(size());
  for (const auto& s : z) out.push_back(s);
  for (const auto& s : x) out.push_back(s);
  for (const auto& s : y) out.push_back(s);
  for (const auto& s : xx) out.push_back(s);
  for (const auto& s : yy) out.push_back(s);
  return out;
}

RandomizedBasis randomize_basis(const std::vector<PureState>& states,
                                std::uint64_t seed, const Tolerances& tol) {
  const int d = common_dim(states);
  const double floor = tol.genericity_floor;

  const auto collect = [&](const Matrix& u, std::vector<PureState>& rotated,
                           std::vector<double>& f) {
    rotated.clear();
    f.clear();
    double worst = 1.0;
    for (const auto& s : states) {
      PureState r(u * s.amplitudes());
      const double m = min_basis_component(r);
      worst = std::min(worst, m);
      f.push_back(1.0 / m);
      rotated.push_back(std::move(r));
    }
    return worst;
  };

  RandomizedBasis out;
  out.unitary = Matrix::Identity(d, d);
  if (collect(out.unitary, out.states, out.f) >= floor) return out;

  Rng rng(seed);
  for (int attempt = 0; attempt < tol.genericity_retries; ++attempt) {
    const Matrix u = haar_unitary(d, rng);
    if (collect(u, out.states, out.f) >= floor) {
      out.unitary = u;
      return out;
    }
  }
  throw InvalidInput("randomize_basis retry limit exceeded");
}

Eigen::MatrixXd gram(const std::vector<DensityMatrix>& states) {
  const int n = static_cast<int>(states.size());
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      g(i, j) = g(j, i) = overlap(states[i], states[j]);
  return g;
}

Eigen::MatrixXd gram(const std::vector<PureState>& states) {
  const int n = static_cast<int>(states.size());
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g(i, j) = g(j, i) = overlap(states[i], states[j]);
  return g;
}

}  // namespace pmst
