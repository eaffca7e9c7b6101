#include "pmst/povm_selftest.hpp"

#include <cmath>

namespace pmst {

KernelBasis kernel_projector(const HermitianOperator& m, double tol_rel) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.matrix());
  if (eig.info() != Eigen::Success)
    throw InvalidInput("eigendecomposition failed");
  if (eig.eigenvalues().minCoeff() < -Tolerances::defaults().psd)
    throw InvalidInput("kernel_projector expects a PSD operator");
  const int d = m.dim();
  const double lmax = std::max(eig.eigenvalues().maxCoeff(), 0.0);
  const double cutoff = tol_rel * lmax;

  KernelBasis out{HermitianOperator(Matrix::Zero(d, d).eval()), {}};
  Matrix proj = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (eig.eigenvalues()[i] < cutoff) {
      const Vector v = eig.eigenvectors().col(i);
      proj += v * v.adjoint();
      out.basis.emplace_back(v);
    }
  }
  out.projector = HermitianOperator(std::move(proj));
  return out;
}

namespace {

std::vector<PureState> nonzero_eigenvectors(const HermitianOperator& m,
                                            double tol_rel) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.matrix());
  const double cutoff = tol_rel * std::max(eig.eigenvalues().maxCoeff(), 0.0);
  std::vector<PureState> out;
  for (int i = 0; i < m.dim(); ++i)
    if (eig.eigenvalues()[i] >= cutoff && eig.eigenvalues()[i] > 0.0)
      out.emplace_back(eig.eigenvectors().col(i).eval());
  return out;
}

Eigen::MatrixXd outer_product_gram(
    const std::vector<std::vector<PureState>>& eigen_bases) {
  // Gram entries over |xi_i^b><xi_j^b|:
  // <(i,j,b), (k,l,c)> = <xi_i^b|xi_k^c> <xi_l^c|xi_j^b>
  struct Entry {
    const PureState* bra;
    const PureState* ket;
  };
  std::vector<Entry> ops;
  for (const auto& basis : eigen_bases)
    for (const auto& vi : basis)
      for (const auto& vj : basis) ops.push_back({&vi, &vj});
  const int n = static_cast<int>(ops.size());
  Eigen::MatrixXd g(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = a; c < n; ++c) {
      const Complex val =
          ops[a].bra->amplitudes().dot(ops[c].bra->amplitudes()) *
          ops[c].ket->amplitudes().dot(ops[a].ket->amplitudes());
      g(a, c) = val.real();
      g(c, a) = val.real();
    }
  }
  return g;
}

}  // namespace

ExtremalityResult is_extremal(const Povm& p, const Tolerances& tol) {
  std::vector<std::vector<PureState>> bases;
  bases.reserve(p.outcomes());
  for (const auto& e : p.elements())
    bases.push_back(nonzero_eigenvectors(e, tol.kernel_rel));
  const Eigen::MatrixXd g = outer_product_gram(bases);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
  const double min_eig = eig.eigenvalues().minCoeff();
  return {min_eig > tol.extremal_gram, min_eig};
}

int PovmScenario::kernel_x(int i, int b) const {
  for (std::size_t x = 0; x < kernel_labels.size(); ++x)
    if (kernel_labels[x] == std::pair<int, int>{i, b})
      return static_cast<int>(x);
  throw InvalidInput("kernel label out of range");
}

PovmWitness build_povm_witness(const Povm& p, const Tolerances& tol) {
  return build_povm_witness(std::vector<Povm>{p}, tol);
}

PovmWitness build_povm_witness(const std::vector<Povm>& ps,
                               const Tolerances& tol) {
  if (ps.empty()) throw InvalidInput("need at least one POVM");
  const int d = ps.front().dim();
  if (d < 3)
    throw InvalidInput("the POVM witness uses the fiducial set (D >= 3)");
  for (const auto& p : ps)
    if (p.dim() != d) throw InvalidInput("POVMs have mixed dimensions");

  PovmWitness w;
  w.selftest.povm = ps.front();
  w.references = ps;
  w.reference_extremal = true;

  std::vector<PureState> kernel_states;
  PovmScenario scenario;
  int b_max = 2;
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    const auto ext = is_extremal(ps[pi], tol);
    w.reference_extremal = w.reference_extremal && ext.extremal;
    b_max = std::max(b_max, ps[pi].outcomes());
    for (int b = 0; b < ps[pi].outcomes(); ++b) {
      const auto kb = kernel_projector(ps[pi].element(b), tol.kernel_rel);
      if (pi == 0) {
        w.selftest.kernel_projectors.push_back(kb.projector);
        w.selftest.kernel_bases.push_back(kb.basis);
      }
      for (std::size_t i = 0; i < kb.basis.size(); ++i) {
        kernel_states.push_back(kb.basis[i]);
        scenario.kernel_labels.emplace_back(static_cast<int>(i), b);
        scenario.kernel_meas.push_back(static_cast<int>(pi));
      }
    }
  }
  for (const auto& e : ps.front().elements())
    w.selftest.eigen_bases.push_back(nonzero_eigenvectors(e, tol.kernel_rel));
  w.selftest.gram = outer_product_gram(w.selftest.eigen_bases);

  // ensemble: kernels, then the fiducial set (deduplicated against states
  // already present when several POVMs share them), then the completion
  std::vector<PureState> base = kernel_states;
  for (const auto& s : fiducial_set(d).all()) base.push_back(s);
  if (ps.size() > 1) {
    std::vector<PureState> dedup;
    for (std::size_t i = 0; i < base.size(); ++i) {
      bool dup = false;
      // kernel block is always kept; only fiducial repeats collapse
      if (i >= kernel_states.size()) {
        for (std::size_t j = kernel_states.size(); j < i && !dup; ++j)
          dup = overlap(base[i], base[j]) > 1.0 - tol.dedup_overlap;
      }
      if (!dup) dedup.push_back(base[i]);
    }
    base = std::move(dedup);
  }

  const WeightedEnsemble ensemble = complete_ensemble(base, tol);
  w.state_witness = build_state_witness(ensemble);

  scenario.x_total = ensemble.size();
  scenario.y_povm = w.state_witness.pairs.count();
  for (int& m : scenario.kernel_meas) m += scenario.y_povm;
  w.scenario = scenario;

  w.selftest.x = ensemble.size();
  w.selftest.y = w.state_witness.pairs.count() + static_cast<int>(ps.size());
  w.selftest.b = ps.front().outcomes();
  return w;
}

double povm_penalty(const PovmWitness& w, const Behavior& p) {
  if (p.Y() < w.selftest.y)
    throw InvalidInput("behavior lacks the POVM measurement block");
  double penalty = 0.0;
  for (std::size_t x = 0; x < w.scenario.kernel_labels.size(); ++x) {
    const int b = w.scenario.kernel_labels[x].second;
    penalty += p.p(static_cast<int>(x), w.scenario.kernel_meas[x], b);
  }
  return penalty;
}

double eval_povm_witness(const PovmWitness& w, const Behavior& p) {
  return eval_witness(w.state_witness, p) - povm_penalty(w, p);
}

namespace {

Behavior behavior_with_povms(const PovmWitness& w,
                             const std::vector<Povm>& measured) {
  const WeightedEnsemble& e = w.state_witness.ensemble;
  const int n = e.size();
  const PairIndexer& pairs = w.state_witness.pairs;
  const int y_total = pairs.count() + static_cast<int>(measured.size());
  int b = 2;
  for (const auto& m : measured) b = std::max(b, m.outcomes());
  std::vector<double> table(static_cast<std::size_t>(n) * y_total * b, 0.0);
  const auto at = [&](int x, int y, int bb) -> double& {
    return table[(static_cast<std::size_t>(x) * y_total + y) * b + bb];
  };
  std::vector<DensityMatrix> rho;
  rho.reserve(n);
  for (const auto& s : e.states) rho.emplace_back(s);
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      const Povm m = helstrom(rho[i], rho[j]);
      const int y = pairs.y_of(i, j);
      for (int x = 0; x < n; ++x) {
        const double p2 = (rho[x].matrix() * m.element(1).matrix()).trace().real();
        at(x, y, 0) = 1.0 - p2;
        at(x, y, 1) = p2;
      }
    }
  }
  for (std::size_t mi = 0; mi < measured.size(); ++mi)
    for (int x = 0; x < n; ++x)
      for (int bb = 0; bb < measured[mi].outcomes(); ++bb)
        at(x, pairs.count() + static_cast<int>(mi), bb) = std::max(
            0.0, (rho[x].matrix() * measured[mi].element(bb).matrix())
                     .trace()
                     .real());
  return Behavior(n, y_total, b, std::move(table));
}

}  // namespace

Behavior ideal_povm_behavior(const PovmWitness& w) {
  return behavior_with_povms(w, w.references);
}

Behavior substituted_povm_behavior(const PovmWitness& w, const Povm& substitute) {
  if (substitute.dim() != w.state_witness.ensemble.dim)
    throw InvalidInput("substitute POVM has the wrong dimension");
  std::vector<Povm> measured = w.references;
  measured.front() = substitute;
  return behavior_with_povms(w, measured);
}

PovmRobustness povm_robustness(const PovmSelfTest& pst, double epsilon,
                               double delta, const Tolerances& tol) {
  if (epsilon < 0.0 || delta < 0.0)
    throw InvalidInput("noise parameters must be nonnegative");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pst.gram);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig <= tol.extremal_gram)
    throw InvalidInput("Gram matrix is singular (POVM not extremal); "
                       "the robustness bound is undefined");
  const int d = pst.povm.dim();
  const int b = pst.povm.outcomes();
  PovmRobustness out;
  out.epsilon = epsilon;
  out.delta = delta;
  const double base = (d - 1) * epsilon + delta;
  out.eps_prime = base + 2.0 * std::sqrt(base);
  out.gram_inv_norm = 1.0 / min_eig;
  out.bound =
      (1.0 + std::sqrt(static_cast<double>(d)) * b * std::sqrt(out.gram_inv_norm)) *
      out.eps_prime;
  return out;
}

Povm example_povm() {
  const double s3 = std::sqrt(3.0);
  Vector phi1(3), phi2(3), phi3(3), phi4(3);
  phi1 << s3 / 2.0, -0.5, 0.0;
  phi2 << s3 / 2.0, 0.5, 0.0;
  phi3 << 0.0, 1.0, 0.0;
  phi4 << 0.0, 0.0, 1.0;
  const auto proj = [](const Vector& v) -> Matrix { return v * v.adjoint(); };
  std::vector<HermitianOperator> elems;
  elems.emplace_back(Matrix(2.0 / 3.0 * proj(phi1)));
  elems.emplace_back(Matrix(2.0 / 3.0 * proj(phi2)));
  elems.emplace_back(Matrix(2.0 / 3.0 * proj(phi3) + proj(phi4)));
  return Povm(std::move(elems));
}

}  // namespace pmst
