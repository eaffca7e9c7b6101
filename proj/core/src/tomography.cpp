#include "pmst/tomography.hpp"

#include <cmath>
#include <numbers>

#include "pmst/ensemble.hpp"

namespace pmst {

double xi_constant(int dim, double f) {
  if (dim < 2) throw InvalidInput("dimension must be at least 2");
  if (!(f > dim - 1))
    throw InvalidInput("xi(D, f) needs f > D - 1 to stay positive");
  return (1.0 / (1.0 - (dim - 1) / f)) *
         (1.0 - std::cos(std::numbers::pi / dim));
}

std::vector<double> tridiagonal_spectrum(int dim) {
  if (dim < 2) throw InvalidInput("dimension must be at least 2");
  std::vector<double> out;
  out.reserve(dim);
  for (int j = 0; j < dim; ++j)
    out.push_back(1.0 - std::cos(std::numbers::pi * j / dim));
  return out;
}

Matrix tridiagonal_operator(int dim) {
  if (dim < 2) throw InvalidInput("dimension must be at least 2");
  Matrix h = Matrix::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) {
    h(k, k) += 0.5;
    h(k + 1, k + 1) += 0.5;
    h(k, k + 1) -= 0.5;
    h(k + 1, k) -= 0.5;
  }
  return h;
}

TomographyCertificate tomography_operator(const PureState& psi, double f,
                                          const Tolerances& tol) {
  const int d = psi.dim();
  const double xi = xi_constant(d, f);
  const Vector& c = psi.amplitudes();
  for (int k = 0; k < d; ++k) {
    if (std::norm(c[k]) + tol.unit_norm < 1.0 / f)
      throw InvalidInput("target state violates tr(psi Z_k) >= 1/f at k=" +
                         std::to_string(k));
  }

  // Conjugating the tridiagonal operator by C^-1 multiplies |Z_k><Z_l| by
  // 1/(conj(c_k) c_l). In the projector family this gives, per link k,
  //   -Re(w_k) X_k + Im(w_k) Y_k + (Re(w_k) - Im(w_k))/2 (Z_k + Z_{k+1}),
  // with w_k = 1/(conj(c_k) c_{k+1}), on top of the diagonal 1/|c_k|^2 terms.
  Eigen::VectorXd zcoef = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd mu(d - 1), nu(d - 1);
  for (int k = 0; k < d; ++k)
    zcoef[k] = ((k == 0 || k == d - 1) ? 0.5 : 1.0) / std::norm(c[k]);
  for (int k = 0; k + 1 < d; ++k) {
    const Complex w = 1.0 / (std::conj(c[k]) * c[k + 1]);
    const double re = w.real(), im = w.imag();
    zcoef[k] += 0.5 * (re - im);
    zcoef[k + 1] += 0.5 * (re - im);
    mu[k] = re / xi;
    nu[k] = -im / xi;
  }

  TomographyCertificate cert{psi,
                             f,
                             xi,
                             Eigen::VectorXd(d),
                             std::move(mu),
                             std::move(nu),
                             HermitianOperator::identity(d),
                             0.0,
                             0.0};
  for (int k = 0; k < d; ++k) cert.lambda[k] = 1.0 - zcoef[k] / xi;

  Matrix h = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    h += cert.lambda[k] * z_state(d, k).projector().matrix();
  for (int k = 0; k + 1 < d; ++k) {
    h += cert.mu[k] * x_state(d, k).projector().matrix();
    h += cert.nu[k] * y_state(d, k).projector().matrix();
  }
  cert.h = HermitianOperator(std::move(h));

  cert.lambda_cap = d + (d - 1) * (1.0 + std::numbers::sqrt2) * f / xi;
  cert.mu_cap = f * (d - 1) / xi;
  return cert;
}

}  // namespace pmst
