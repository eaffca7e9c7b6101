#pragma once

#include <utility>
#include <vector>

#include "pmst/ensemble.hpp"
#include "pmst/qmat.hpp"
#include "pmst/witness.hpp"

namespace pmst {

struct KernelBasis {
  HermitianOperator projector;   // Z_b
  std::vector<PureState> basis;  // orthonormal kernel vectors
};

/// Projector onto the eigenspace with eigenvalues below tol_rel * lambda_max.
/// A full-rank element yields the zero projector and an empty basis.
KernelBasis kernel_projector(const HermitianOperator& m, double tol_rel);

struct ExtremalityResult {
  bool extremal = false;
  double min_gram_eig = 0.0;
};

/// D'Ariano criterion: the POVM is extremal iff the Gram matrix of the
/// eigenvector outer products |xi_i^b><xi_j^b| (inner product tr(A^dag B))
/// is positive definite.
ExtremalityResult is_extremal(const Povm& p,
                              const Tolerances& tol = Tolerances::defaults());

/// Everything needed to self-test a POVM: kernels, eigenvector outer-product
/// Gram, and the prepare-and-measure scenario sizes.
struct PovmSelfTest {
  Povm povm;
  std::vector<HermitianOperator> kernel_projectors;   // Z_b
  std::vector<std::vector<PureState>> kernel_bases;   // psi_i^b
  std::vector<std::vector<PureState>> eigen_bases;    // xi_i^b
  Eigen::MatrixXd gram;                               // over |xi_i^b><xi_j^b|
  int x = 0;  // preparations
  int y = 0;  // measurements (dichotomic block + the POVM measurement)
  int b = 0;  // outcomes of the POVM measurement
};

/// Scenario index map for the POVM witness: kernel preparations come first
/// (labels (i, b), enumerated b-major, grouped per POVM), then the fiducial
/// set, then the completion states; the POVM measurements are appended after
/// the dichotomic pair block, one per tested POVM.
struct PovmScenario {
  std::vector<std::pair<int, int>> kernel_labels;  // (i, b) per kernel prep
  std::vector<int> kernel_meas;  // appended-measurement index per kernel prep
  int x_total = 0;
  int y_povm = 0;  // index of the first appended B-outcome measurement
  int kernel_x(int i, int b) const;
};

struct PovmWitness {
  PovmSelfTest selftest;
  StateWitness state_witness;  // over the completed ensemble
  PovmScenario scenario;
  std::vector<Povm> references;     // every tested POVM, in block order
  bool reference_extremal = false;  // witness is valid either way, the
                                    // self-testing claim needs extremality
};

PovmWitness build_povm_witness(const Povm& p,
                               const Tolerances& tol = Tolerances::defaults());

/// Several extremal POVMs at once: one penalty block per POVM, shared
/// fiducial/completion states deduplicated by overlap matching.
PovmWitness build_povm_witness(const std::vector<Povm>& ps,
                               const Tolerances& tol = Tolerances::defaults());

/// W(P) = W_psi(P) - sum_b sum_i P(b | x=(i,b), y=Y); maximum 1 - 1/D.
double eval_povm_witness(const PovmWitness& w, const Behavior& p);
double povm_penalty(const PovmWitness& w, const Behavior& p);

/// Reference realization: the ensemble states, Helstrom pairs, and the
/// reference POVM(s) at the appended measurement(s).
Behavior ideal_povm_behavior(const PovmWitness& w);

/// Same behavior but with `substitute` measured at the POVM slot.
Behavior substituted_povm_behavior(const PovmWitness& w, const Povm& substitute);

struct PovmRobustness {
  double epsilon = 0.0;
  double delta = 0.0;
  double eps_prime = 0.0;       // (D-1) eps + delta + 2 sqrt((D-1) eps + delta)
  double gram_inv_norm = 0.0;   // ||G^-1||
  double bound = 0.0;           // (1 + sqrt(D) B sqrt(||G^-1||)) eps'
};

PovmRobustness povm_robustness(const PovmSelfTest& pst, double epsilon,
                               double delta,
                               const Tolerances& tol = Tolerances::defaults());

/// The rank-(1,1,2) qutrit example: M_1 = 2 phi_1 / 3, M_2 = 2 phi_2 / 3,
/// M_3 = 2 phi_3 / 3 + phi_4.
Povm example_povm();

}  // namespace pmst
