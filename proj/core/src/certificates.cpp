#include "pmst/certificates.hpp"

#include <cmath>

#include "pmst/ensemble.hpp"

namespace pmst {

YyDiscriminationCoeffs yy_discrimination_published() {
  return {{1.8149, 1.9415, 0.2167}, -1.5939, 2.9170};
}

double yy_discrimination_margin(const YyDiscriminationCoeffs& c) {
  return (c.lambda[0] + c.lambda[1] + c.lambda[2]) / 3.0 + (2.0 / 3.0) * c.mu -
         5.0 / 9.0;
}

Certificate yy_discrimination_certificate(const YyDiscriminationCoeffs& c,
                                          int k, int dim) {
  if (dim < 3) throw InvalidInput("discrimination certificate needs D >= 3");
  if (k < 0 || k + 2 >= dim) throw InvalidInput("certificate index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  for (int j = 0; j < 3; ++j)
    m += c.lambda[j] * z_state(dim, k + j).projector().matrix();
  m += c.mu * y_state(dim, k).projector().matrix();
  m += c.nu * y_state(dim, k + 1).conjugated().projector().matrix();
  m -= xx_state(dim, k).projector().matrix();
  HermitianOperator op(std::move(m));
  const double me = psd_min_eig(op);
  return {std::move(op), me};
}

YyDiscriminationCoeffs yy_discrimination_refined() {
  // Adding t |Y_k><Y_k| (t > 0) to the operator can only raise eigenvalues,
  // so min_eig is monotone in mu and bisection applies.
  YyDiscriminationCoeffs c = yy_discrimination_published();
  const auto feasible = [&](double mu) {
    YyDiscriminationCoeffs probe = c;
    probe.mu = mu;
    return yy_discrimination_certificate(probe, 0, 3).min_eig >= 0.0;
  };
  double lo = c.mu;  // infeasible (min eig < 0)
  double step = 1e-5;
  double hi = c.mu + step;
  while (!feasible(hi)) {
    step *= 2.0;
    hi = c.mu + step;
    if (step > 2.0) throw StageFailure("certificate-refine", "no feasible mu");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  c.mu = hi;
  return c;
}

Certificate certificate_check(const std::string& name, int k, int dim,
                              const Tolerances& tol) {
  (void)tol;
  if (dim < 3) throw InvalidInput("recovery certificates need D >= 3");
  if (k < 0 || k + 2 >= dim) throw InvalidInput("certificate index out of range");

  if (name == "yys")
    return yy_discrimination_certificate(yy_discrimination_published(), k, dim);

  Matrix m = Matrix::Zero(dim, dim);
  if (name == "xx") {
    m = xx_state(dim, k).projector().matrix();
    m -= 2.0 * (x_state(dim, k).projector().matrix() +
                x_state(dim, k + 1).projector().matrix());
    m += z_state(dim, k).projector().matrix();
    m += 3.0 * z_state(dim, k + 1).projector().matrix();
    m += z_state(dim, k + 2).projector().matrix();
  } else if (name == "yy-recovery") {
    m = yy_state(dim, k).projector().matrix();
    m -= z_state(dim, k).projector().matrix();
    m += z_state(dim, k + 1).projector().matrix();
    m += z_state(dim, k + 2).projector().matrix();
    m += 2.0 * (y_state(dim, k).projector().matrix() -
                y_state(dim, k + 1).projector().matrix());
  } else {
    throw InvalidInput("unknown certificate name: " + name);
  }
  HermitianOperator op(std::move(m));
  const double me = psd_min_eig(op);
  return {std::move(op), me};
}

}  // namespace pmst
