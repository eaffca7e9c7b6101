#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "pmst/errors.hpp"
#include "pmst/tolerances.hpp"

namespace pmst {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense D x D complex Hermitian matrix. Inputs are symmetrized as
/// (A + A^dag)/2 on ingestion when the asymmetry is below tolerance and
/// rejected above it, so downstream code can rely on exact Hermiticity.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries,
                             const Tolerances& tol = Tolerances::defaults());

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator scaled(double s) const;

  static HermitianOperator identity(int dim);

 private:
  Matrix mat_;
};

/// Unit-norm ket in C^D.
class PureState {
 public:
  explicit PureState(Vector amplitudes,
                     const Tolerances& tol = Tolerances::defaults());

  int dim() const { return static_cast<int>(amp_.size()); }
  const Vector& amplitudes() const { return amp_; }

  /// Rank-1 projector |psi><psi|.
  HermitianOperator projector() const;
  PureState conjugated() const;

  static PureState basis(int dim, int k);  // |k>, zero-based

 private:
  Vector amp_;
};

/// Positive semidefinite, unit-trace operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op,
                         const Tolerances& tol = Tolerances::defaults());
  explicit DensityMatrix(const PureState& psi);

  int dim() const { return op_.dim(); }
  const Matrix& matrix() const { return op_.matrix(); }
  const HermitianOperator& op() const { return op_; }

  static DensityMatrix maximally_mixed(int dim);

 private:
  HermitianOperator op_;
};

/// Measurement: PSD elements summing to the identity.
class Povm {
 public:
  Povm() = default;  // empty placeholder
  explicit Povm(std::vector<HermitianOperator> elements,
                const Tolerances& tol = Tolerances::defaults());

  int dim() const { return elements_.empty() ? 0 : elements_.front().dim(); }
  int outcomes() const { return static_cast<int>(elements_.size()); }
  const HermitianOperator& element(int b) const { return elements_.at(b); }
  const std::vector<HermitianOperator>& elements() const { return elements_; }

 private:
  std::vector<HermitianOperator> elements_;
};

/// Unitary or anti-unitary symmetry. The action on states is
/// rho -> U K(rho) U^dag where K is entrywise conjugation in the
/// computational basis iff `conjugate` is set.
struct SymOp {
  Matrix unitary;
  bool conjugate = false;

  DensityMatrix apply(const DensityMatrix& rho) const;
  PureState apply(const PureState& psi) const;
  bool is_valid(const Tolerances& tol = Tolerances::defaults()) const;

  static SymOp identity(int dim);
};

// ---- operations ----

/// ||a - b||_1: sum of absolute eigenvalues of the difference. In [0, 2].
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// tr(a b), guaranteed real for Hermitian arguments.
double overlap(const DensityMatrix& a, const DensityMatrix& b);
double overlap(const PureState& a, const PureState& b);

/// tr(a^2), in [1/D, 1].
double purity(const DensityMatrix& a);

/// Dominant eigenvector and its eigenvalue p(1); guarantees
/// ||a - phi phi^dag||_1 = 2(1 - p(1)) <= 2(1 - tr a^2). Degeneracies are
/// broken deterministically (canonical phase + lexicographic order).
std::pair<PureState, double> top_eigenstate(
    const DensityMatrix& a, const Tolerances& tol = Tolerances::defaults());

/// Optimal two-outcome discrimination of (a, b). Outcome 2 projects onto the
/// strictly positive eigenspace of a - b (kernel goes to outcome 1), so that
/// tr((a - b) M_2) = ||a - b||_1 / 2.
Povm helstrom(const DensityMatrix& a, const DensityMatrix& b);

/// Smallest eigenvalue; the caller compares against its own tolerance.
double psd_min_eig(const HermitianOperator& h);

/// Operator square root; rejects inputs with eigenvalues below the PSD floor.
HermitianOperator psd_sqrt(const HermitianOperator& g,
                           const Tolerances& tol = Tolerances::defaults());

/// Inverse square root on the support only.
HermitianOperator psd_inv_sqrt(const HermitianOperator& g,
                               const Tolerances& tol = Tolerances::defaults());

}  // namespace pmst
