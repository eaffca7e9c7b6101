#include "pmst/reconstruction.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "pmst/tomography.hpp"

namespace pmst {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_sqrt(double x) { return x >= 0.0 ? std::sqrt(x) : kInf; }

}  // namespace

DeltaChain delta_chain(double delta_o, double delta_p, int dim,
                       const std::vector<double>& f) {
  if (delta_o < 0.0 || delta_p < 0.0)
    throw InvalidInput("noise constants must be nonnegative");
  if (dim < 3) throw InvalidInput("the chain is defined for D >= 3");
  for (double fj : f)
    if (!(fj > dim - 1))
      throw InvalidInput("f_j must exceed D - 1 for xi to be defined");

  DeltaChain c;
  c.delta_o = delta_o;
  c.delta_p = delta_p;
  c.dim = dim;
  c.f = f;

  const double dm1 = dim - 1;
  c.dz_prime = 2.0 * delta_p + delta_o;
  c.cond1 = c.dz_prime < 1.0 / (dm1 * dm1);

  const double inner = 1.0 - c.dz_prime / 8.0 * dm1 * dm1;
  c.dz = 2.0 * delta_p + 2.0 * safe_sqrt(1.0 - inner * inner);

  c.dx_prime = c.dz / 2.0 + delta_p + delta_o;
  c.dx = 2.0 * std::numbers::sqrt2 * safe_sqrt(c.dx_prime) + 2.0 * delta_p;

  const double a = (c.dx + c.dz) / 2.0 + 2.0 * delta_p + 2.0 * delta_o;
  const double b = c.dz / 2.0 + delta_p + delta_o;
  const double mu = a * a + b * b;
  const double nu = 1.0 - 2.0 * b;
  const double disc = nu * nu - 4.0 * mu;
  c.cond3 = std::isfinite(disc) && disc >= 0.0;
  if (c.cond3) {
    const double fval = 0.5 * (nu + std::sqrt(disc));
    c.dy = 2.0 * delta_p + 2.0 * safe_sqrt(std::max(0.0, 1.0 - fval));
  } else {
    c.dy = kInf;
  }

  c.dxx = 2.0 * safe_sqrt(1.2 * c.dx + 0.9 * c.dz + 4.2 * delta_o);
  c.dyy = 2.0 * safe_sqrt(1.5 * c.dz + 2.0 * c.dy + 7.0 * delta_o);

  c.cond5_lhs = -0.2938 + 0.7970 * c.dy + 2.2555 * c.dz + 0.5 * c.dxx +
                7.1049 * delta_o;
  c.cond5 = std::isfinite(c.cond5_lhs) && c.cond5_lhs < 0.0;

  c.dpsi.reserve(f.size());
  for (double fj : f) {
    const double xi = std::isfinite(fj)
                          ? xi_constant(dim, fj)
                          : 1.0 - std::cos(std::numbers::pi / dim);
    const double quarter =
        (dim + dm1 * (1.0 + std::numbers::sqrt2) * fj / (2.0 * xi)) * c.dz +
        fj * dm1 / (2.0 * xi) * c.dx + fj * dm1 / (2.0 * xi) * c.dy +
        (dim + dm1 * (1.0 + std::numbers::sqrt2) * fj / xi +
         2.0 * fj * dm1 / xi) *
            delta_o;
    c.dpsi.push_back(2.0 * safe_sqrt(quarter));
  }
  return c;
}

BasisRecovery recover_z_basis(const std::vector<DensityMatrix>& z_states,
                              const Tolerances& tol) {
  if (z_states.empty()) throw InvalidInput("no Z states supplied");
  const int d = z_states.front().dim();
  if (static_cast<int>(z_states.size()) != d)
    throw InvalidInput("need exactly D prepared Z states");

  std::vector<PureState> purified;
  std::vector<double> top;
  purified.reserve(d);
  for (const auto& rho : z_states) {
    auto [phi, p1] = top_eigenstate(rho, tol);
    purified.push_back(std::move(phi));
    top.push_back(p1);
  }

  double delta = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      delta = std::max(delta, overlap(purified[i], purified[j]));

  if (!(1.0 - std::sqrt(delta) * (d - 1) > 0.0))
    throw StageFailure("z-basis",
                       "purified states are not provably linearly independent "
                       "(overlap " + std::to_string(delta) + ")");

  Matrix gamma(d, d);
  for (int k = 0; k < d; ++k) gamma.col(k) = purified[k].amplitudes();
  const HermitianOperator g{Matrix(gamma.adjoint() * gamma)};
  const Matrix m = gamma * psd_inv_sqrt(g, tol).matrix();

  BasisRecovery out;
  out.unitary = m.adjoint();
  out.purified_overlap = delta;
  const double inner = 1.0 - delta / 8.0 * (d - 1) * (d - 1);
  const double lemma = 2.0 * safe_sqrt(std::max(0.0, 1.0 - inner * inner));
  for (int k = 0; k < d; ++k)
    out.bounds.push_back(2.0 * (1.0 - top[k]) + lemma);
  return out;
}

Matrix fix_x_phases(const std::vector<DensityMatrix>& x_states,
                    const Tolerances& tol) {
  if (x_states.empty()) throw InvalidInput("no X states supplied");
  const int d = x_states.front().dim();
  if (static_cast<int>(x_states.size()) != d - 1)
    throw InvalidInput("need exactly D - 1 prepared X states");

  std::vector<double> theta(d - 1, 0.0);
  for (int k = 0; k + 1 < d; ++k) {
    auto [phi, p1] = top_eigenstate(x_states[k], tol);
    Vector v = phi.amplitudes();
    if (std::abs(v[k]) < tol.phase_floor)
      throw StageFailure("x-phases", "vanishing overlap <Z_k|X'_k> at k=" +
                                         std::to_string(k));
    v *= std::conj(v[k]) / std::abs(v[k]);  // <Z_k|X'_k> real nonnegative
    theta[k] = (std::abs(v[k + 1]) < tol.phase_floor) ? 0.0 : std::arg(v[k + 1]);
  }

  Matrix v = Matrix::Identity(d, d);
  double acc = 0.0;
  for (int k = 1; k < d; ++k) {
    acc += theta[k - 1];
    v(k, k) = std::exp(Complex(0.0, -acc));
  }
  return v;
}

bool detect_conjugation(const std::vector<DensityMatrix>& y_states,
                        const std::vector<DensityMatrix>& yy_states,
                        const DeltaChain& chain, const Tolerances& tol) {
  if (y_states.empty()) throw InvalidInput("no Y states supplied");
  const int d = y_states.front().dim();
  if (static_cast<int>(y_states.size()) != d - 1 ||
      static_cast<int>(yy_states.size()) != d - 2)
    throw InvalidInput("need D - 1 Y states and D - 2 YY states");

  std::vector<bool> conj_at(d - 1);
  for (int k = 0; k + 1 < d; ++k) {
    auto [phi, p1] = top_eigenstate(y_states[k], tol);
    const double t_id = overlap(phi, y_state(d, k));
    const double t_conj = overlap(phi, y_state(d, k).conjugated());
    conj_at[k] = t_conj > t_id;
  }
  for (int k = 0; k + 2 < d; ++k) {
    if (conj_at[k] != conj_at[k + 1]) {
      if (chain.cond5)
        throw StageFailure("y-conjugation",
                           "inconsistent conjugation pattern although the "
                           "discrimination certificate refutes it");
      throw StageFailure("y-conjugation",
                         "inconsistent conjugation pattern at this noise level");
    }
  }
  const bool conj = conj_at[0];

  // The YY states discriminate the two patterns: each has overlap 0 with the
  // matching Y_k image and 2/3 with the matching Y_{k+1} image.
  for (int k = 0; k + 2 < d; ++k) {
    auto [phi, p1] = top_eigenstate(yy_states[k], tol);
    const DensityMatrix rho{phi};
    PureState ya = conj ? y_state(d, k).conjugated() : y_state(d, k);
    PureState yb = conj ? y_state(d, k + 1).conjugated() : y_state(d, k + 1);
    const double low = overlap(rho, DensityMatrix(ya));
    const double high = overlap(rho, DensityMatrix(yb));
    if (low > 1.0 / 3.0 || high < 1.0 / 3.0)
      throw StageFailure("y-conjugation",
                         "YY overlaps contradict the chosen pattern at k=" +
                             std::to_string(k));
  }
  return conj;
}

ReconstructionReport reconstruct(const std::vector<DensityMatrix>& prepared,
                                 const std::vector<PureState>& reference,
                                 const ReconstructOptions& options,
                                 const Tolerances& tol) {
  if (prepared.empty() || prepared.size() != reference.size())
    throw InvalidInput("prepared and reference lists must match");
  const int d = prepared.front().dim();
  if (d < 3) throw InvalidInput("reconstruction is defined for D >= 3");
  const std::size_t m = options.num_targets;
  const std::size_t fid_count = 5 * static_cast<std::size_t>(d) - 6;
  if (reference.size() != m + fid_count)
    throw InvalidInput("reference must be the targets followed by the "
                       "fiducial set");
  for (const auto& rho : prepared)
    if (rho.dim() != d) throw InvalidInput("states have mixed dimensions");

  const FiducialSet fid = fiducial_set(d);
  const auto canonical = fid.all();
  for (std::size_t i = 0; i < fid_count; ++i) {
    if (overlap(reference[m + i], canonical[i]) < 1.0 - 1e-9)
      throw InvalidInput("reference fiducial block is not in canonical order");
  }

  // measured noise constants
  double delta_o = 0.0, delta_p = 0.0;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    delta_p = std::max(delta_p, 1.0 - purity(prepared[i]));
    for (std::size_t j = i + 1; j < prepared.size(); ++j) {
      const double dev = std::abs(overlap(prepared[i], prepared[j]) -
                                  overlap(reference[i], reference[j]));
      delta_o = std::max(delta_o, dev);
    }
  }

  std::vector<double> f;
  if (options.f) {
    f = *options.f;
    if (f.size() != m) throw InvalidInput("need one f_j per target state");
  } else {
    for (std::size_t j = 0; j < m; ++j) {
      double mn = 1.0;
      for (int k = 0; k < d; ++k)
        mn = std::min(mn, std::norm(reference[j].amplitudes()[k]));
      f.push_back(mn > 0.0 ? 1.0 / mn : kInf);
    }
  }

  ReconstructionReport report;
  report.chain = delta_chain(delta_o, delta_p, d, f);

  // stage 1: Z basis
  std::vector<DensityMatrix> z_block(prepared.begin() + m,
                                     prepared.begin() + m + d);
  const BasisRecovery rec = recover_z_basis(z_block, tol);

  std::vector<DensityMatrix> current;
  current.reserve(prepared.size());
  for (const auto& rho : prepared)
    current.emplace_back(HermitianOperator(
        Matrix(rec.unitary * rho.matrix() * rec.unitary.adjoint())));

  // stage 2: X phases
  std::vector<DensityMatrix> x_block(current.begin() + m + d,
                                     current.begin() + m + d + (d - 1));
  const Matrix v = fix_x_phases(x_block, tol);
  for (auto& rho : current)
    rho = DensityMatrix(
        HermitianOperator(Matrix(v * rho.matrix() * v.adjoint())));

  // stages 3-5: conjugation
  std::vector<DensityMatrix> y_block(current.begin() + m + d + (d - 1),
                                     current.begin() + m + d + 2 * (d - 1));
  std::vector<DensityMatrix> yy_block(current.begin() + m + 3 * d - 2 + (d - 2),
                                      current.end());
  const bool conj = detect_conjugation(y_block, yy_block, report.chain, tol);
  if (conj) {
    for (auto& rho : current)
      rho = DensityMatrix(HermitianOperator(rho.matrix().conjugate()));
  }

  const Matrix net = v * rec.unitary;
  report.symmetry = SymOp{conj ? net.conjugate() : net, conj};

  // stage 6: distances against the reference, checked per family
  const auto family = [&](std::size_t i) -> std::pair<std::string, double> {
    if (i < m) return {"psi_" + std::to_string(i), report.chain.dpsi[i]};
    const std::size_t r = i - m;
    if (r < static_cast<std::size_t>(d))
      return {"Z_" + std::to_string(r), report.chain.dz};
    if (r < static_cast<std::size_t>(2 * d - 1))
      return {"X_" + std::to_string(r - d), report.chain.dx};
    if (r < static_cast<std::size_t>(3 * d - 2))
      return {"Y_" + std::to_string(r - (2 * d - 1)), report.chain.dy};
    if (r < static_cast<std::size_t>(4 * d - 4))
      return {"XX_" + std::to_string(r - (3 * d - 2)), report.chain.dxx};
    return {"YY_" + std::to_string(r - (4 * d - 4)), report.chain.dyy};
  };

  report.all_within_bounds = true;
  for (std::size_t i = 0; i < current.size(); ++i) {
    auto [label, bound] = family(i);
    const double dist =
        trace_distance(current[i], DensityMatrix(reference[i]));
    const bool pass = !(dist > bound);
    report.checks.push_back({label, dist, bound, pass});
    report.max_distance = std::max(report.max_distance, dist);
    report.all_within_bounds = report.all_within_bounds && pass;
  }
  report.all_feasible = report.chain.all_feasible();
  return report;
}

}  // namespace pmst
