#pragma once

#include <vector>

#include "pmst/qmat.hpp"

namespace pmst {

using BlochVector = Eigen::Vector3d;

/// rho = (I + m . sigma)/2; |0><0| maps to (0, 0, 1).
BlochVector bloch(const DensityMatrix& rho);
DensityMatrix bloch_to_state(const BlochVector& m);

struct BlochAlignment {
  Eigen::Matrix3d transform;      // orthogonal O-tilde
  std::vector<double> residuals;  // ||n_k - O-tilde m_k||_2
  double bound = 0.0;             // sqrt(N delta) + sqrt(delta' c')
  double delta_prime = 0.0;       // delta + N delta + 2 sqrt(N delta)
  double c_prime = 0.0;           // sum_i ||c_i||_1^2 / lambda_i over supp(Gram)
};

/// Finds the orthogonal transform carrying the reference Bloch vectors ms
/// near the observed ns, given |m_i.m_j - n_i.n_j| <= delta for all i, j
/// (checked). Procedure: Gram square roots, isometries onto the spans,
/// completion on the orthogonal complements in index order, then the polar
/// orthogonal factor. The returned bound dominates every residual.
BlochAlignment align_bloch(const std::vector<BlochVector>& ms,
                           const std::vector<BlochVector>& ns, double delta,
                           const Tolerances& tol = Tolerances::defaults());

/// Lifts a 3x3 orthogonal matrix to the qubit symmetry realizing it on Bloch
/// vectors: det +1 becomes an SU(2) rotation, det -1 composes with the
/// conjugation reflection diag(1, -1, 1). The unitary's global phase is fixed
/// by making its first nonzero top-row entry real positive.
SymOp orthogonal_to_quantum(const Eigen::Matrix3d& o,
                            const Tolerances& tol = Tolerances::defaults());

}  // namespace pmst
