#pragma once

#include <vector>

#include "pmst/qmat.hpp"

namespace pmst {

/// The coefficients of H = sum_k lambda_k Z_k + sum_k mu_k X_k + nu_k Y_k
/// witnessing psi tomographically: psi psi^dag - H >= 0 and tr(H psi psi^dag) = 1,
/// with the 1-norm caps
///   sum |lambda_k| <= D + (D-1)(1+sqrt2) f / xi(D,f),
///   sum |mu_k|, sum |nu_k| <= f (D-1) / xi(D,f).
struct TomographyCertificate {
  PureState target;
  double f = 0.0;
  double xi = 0.0;
  Eigen::VectorXd lambda;  // size D
  Eigen::VectorXd mu;      // size D-1
  Eigen::VectorXd nu;      // size D-1
  HermitianOperator h;     // assembled from the coefficients
  double lambda_cap = 0.0;
  double mu_cap = 0.0;  // the nu cap is the same
};

/// xi(D, F) = (1 / (1 - (D-1)/F)) (1 - cos(pi/D)); requires F > D-1.
double xi_constant(int dim, double f);

/// Requires tr(psi |k><k|) >= 1/f for every k. Builds H' = (C^-1)^dag Ht C^-1
/// from the amplitude multiplier C and the tridiagonal operator Ht, then
/// H = I - H'/xi(D, f), expanded in the {Z_k, X_k, Y_k} projector family.
TomographyCertificate tomography_operator(
    const PureState& psi, double f,
    const Tolerances& tol = Tolerances::defaults());

/// {1 - cos(pi j / D) : j = 0..D-1}, ascending.
std::vector<double> tridiagonal_spectrum(int dim);

/// The operator whose spectrum that is:
/// Ht = 1/2 sum_k (Z_k + Z_{k+1} - |Z_{k+1}><Z_k| - |Z_k><Z_{k+1}|).
Matrix tridiagonal_operator(int dim);

}  // namespace pmst
