#pragma once

#include <vector>

#include "pmst/ensemble.hpp"
#include "pmst/qmat.hpp"

namespace pmst {

/// Observed statistics P(b|x,y) of a prepare-and-measure experiment.
/// Measurements with fewer than B outcomes leave the remaining cells at zero.
class Behavior {
 public:
  Behavior(int x, int y, int b, std::vector<double> table,
           const Tolerances& tol = Tolerances::defaults());

  int X() const { return x_; }
  int Y() const { return y_; }
  int B() const { return b_; }
  double p(int x, int y, int b) const { return table_.at(index(x, y, b)); }
  const std::vector<double>& table() const { return table_; }

 private:
  std::size_t index(int x, int y, int b) const;
  int x_, y_, b_;
  std::vector<double> table_;
};

/// Dichotomic measurements are labeled by state pairs (i, j), i > j,
/// enumerated j-major: (1,0), (2,0), ..., (N-1,0), (2,1), (3,1), ...
struct PairIndexer {
  int n = 0;
  int count() const { return n * (n - 1) / 2; }
  int y_of(int i, int j) const;           // requires i > j
  std::pair<int, int> pair_of(int y) const;  // returns (i, j), i > j
};

/// The state self-testing functional: W(P) = sum_{i>j} w_ij S_ij with
/// S_ij = P(2|x=i, y=(i,j)) - P(2|x=j, y=(i,j)) and
/// w_ij = alpha_i alpha_j ||psi_i - psi_j||_1. Its quantum maximum is
/// w_star = 1 - 1/D.
struct StateWitness {
  WeightedEnsemble ensemble;
  PairIndexer pairs;
  Eigen::MatrixXd coeff;  // coeff(i, j) for i > j, zero elsewhere
  double w_star = 0.0;
};

StateWitness build_state_witness(const WeightedEnsemble& e);

/// Saturating realization: prepare the reference states, discriminate every
/// pair with its Helstrom measurement.
Behavior ideal_behavior(const WeightedEnsemble& e);

/// Accepts any behavior that contains at least the required cells; extra
/// preparations/measurements are ignored.
double eval_witness(const StateWitness& w, const Behavior& p);

/// c_ij = sqrt(alpha_i alpha_j) ||rho_i - rho_j||_1 and its upper bound
/// d_ij = 2 sqrt(alpha_i alpha_j) sqrt(1 - tr(rho_i rho_j)); c <= d entrywise,
/// with equality on pure states.
struct CVector {
  Eigen::MatrixXd c;
  Eigen::MatrixXd d;
  double c_norm_sq = 0.0;  // ||c||_2^2 over i > j
  double d_norm_sq = 0.0;
};

CVector cvec(const std::vector<DensityMatrix>& rho,
             const std::vector<double>& weights);

/// The noise constants fed to the reconstruction chain when the witness
/// falls short of its maximum by epsilon:
/// delta_p = 2 eps / sum_i alpha_i^2,
/// delta_o = sqrt(8 eps) / sqrt(min_{i != j} alpha_i alpha_j).
struct OverlapBounds {
  double delta_o = 0.0;
  double delta_p = 0.0;
};

OverlapBounds robust_overlap_bounds(double epsilon,
                                    const std::vector<double>& weights, int dim);

}  // namespace pmst
