#pragma once

#include <string>

#include "pmst/qmat.hpp"

namespace pmst {

/// Coefficients of the three-level discrimination certificate
/// sum_j lambda[j] Z_{k+j} + mu |Y_k><Y_k| + nu |conj(Y_{k+1})><conj(Y_{k+1})|
///   - |XX_k><XX_k|.
struct YyDiscriminationCoeffs {
  double lambda[3];
  double mu;
  double nu;
};

/// The published 4-decimal coefficient set. Its operator bottoms out at
/// about -4.8e-6, the rounding error of the four printed decimals.
YyDiscriminationCoeffs yy_discrimination_published();

/// Re-optimizes mu by bisection under a PSD feasibility check (the operator
/// is monotone in mu), producing a certificate PSD at machine precision with
/// a marginally weaker refutation constant.
YyDiscriminationCoeffs yy_discrimination_refined();

/// The refutation margin sum_k c_k lambda_k of the discrimination certificate
/// (-0.2938 for the published coefficients).
double yy_discrimination_margin(const YyDiscriminationCoeffs& c);

struct Certificate {
  HermitianOperator op;
  double min_eig = 0.0;
};

/// Builds a named recovery certificate on levels k..k+2 (k zero-based,
/// 0 <= k <= D-3) and returns its minimum eigenvalue.
///   "xx":          |XX_k><XX_k| - 2(X_k + X_{k+1}) + Z_k + 3 Z_{k+1} + Z_{k+2}
///                  (equal to |w><w|/3 with w = e_k - 2 e_{k+1} + e_{k+2})
///   "yys":         the discrimination certificate with published coefficients
///   "yy-recovery": |YY_k><YY_k| - Z_k + Z_{k+1} + Z_{k+2} + 2(Y_k - Y_{k+1})
Certificate certificate_check(const std::string& name, int k, int dim,
                              const Tolerances& tol = Tolerances::defaults());

Certificate yy_discrimination_certificate(const YyDiscriminationCoeffs& c,
                                          int k, int dim);

}  // namespace pmst
