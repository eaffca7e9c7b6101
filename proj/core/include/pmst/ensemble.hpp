#pragma once

#include <cstdint>
#include <vector>

#include "pmst/qmat.hpp"
#include "pmst/random.hpp"

namespace pmst {

/// Pure states psi_i with weights alpha_i. When `completed` is set the
/// resolution-of-identity condition sum_i alpha_i psi_i = I/D (and hence
/// sum_i alpha_i = 1) has been verified.
struct WeightedEnsemble {
  int dim = 0;
  std::vector<PureState> states;
  std::vector<double> weights;
  bool completed = false;

  WeightedEnsemble() = default;
  WeightedEnsemble(std::vector<PureState> states_, std::vector<double> weights_,
                   bool completed_,
                   const Tolerances& tol = Tolerances::defaults());

  int size() const { return static_cast<int>(states.size()); }
};

/// The 5D-6 auxiliary states anchoring high-dimensional reconstruction:
/// Z_k = |k>, X_k = (|k>+|k+1>)/sqrt2, Y_k = (|k>+i|k+1>)/sqrt2,
/// XX_k = (|k>+|k+1>+|k+2>)/sqrt3, YY_k = (i|k>+|k+1>+i|k+2>)/sqrt3.
struct FiducialSet {
  int dim = 0;
  std::vector<PureState> z;   // D states
  std::vector<PureState> x;   // D-1
  std::vector<PureState> y;   // D-1
  std::vector<PureState> xx;  // D-2
  std::vector<PureState> yy;  // D-2

  /// Flattened in family order Z, X, Y, XX, YY.
  std::vector<PureState> all() const;
  int size() const { return 5 * dim - 6; }
};

// Individual family members (valid for any D >= 2; XX/YY need D >= 3).
PureState z_state(int dim, int k);
PureState x_state(int dim, int k);
PureState y_state(int dim, int k);
PureState xx_state(int dim, int k);
PureState yy_state(int dim, int k);

/// Extends `states` to an ensemble satisfying sum_i alpha_i psi_i = I/D:
/// the inputs get the maximal uniform weight lambda* = 1/(D lambda_max(sum psi_i))
/// and the positive-eigenvalue eigenvectors of V = I/D - lambda* sum psi_i are
/// appended with their eigenvalues as weights (at most D-1 of them).
WeightedEnsemble complete_ensemble(const std::vector<PureState>& states,
                                   const Tolerances& tol = Tolerances::defaults());

FiducialSet fiducial_set(int dim);

struct RandomizedBasis {
  Matrix unitary;
  std::vector<PureState> states;
  std::vector<double> f;  // f_j = 1 / min_k tr(psi_j |k><k|)
};

/// Applies a Haar-random basis change until every state has all computational
/// components above the genericity floor, so that the f_j are finite and
/// reproducible. A fixed seed gives bit-identical output.
RandomizedBasis randomize_basis(const std::vector<PureState>& states,
                                std::uint64_t seed,
                                const Tolerances& tol = Tolerances::defaults());

/// G_ij = tr(rho_i rho_j).
Eigen::MatrixXd gram(const std::vector<DensityMatrix>& states);
Eigen::MatrixXd gram(const std::vector<PureState>& states);

}  // namespace pmst
