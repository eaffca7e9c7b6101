#include "pmst/qmat.hpp"

#include <algorithm>
#include <cmath>

namespace pmst {

const Tolerances& Tolerances::defaults() {
  static const Tolerances t{};
  return t;
}

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> eigh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw InvalidInput("eigendecomposition failed to converge");
  return solver;
}

void require_same_dim(int a, int b) {
  if (a != b) throw InvalidInput("dimension mismatch: " + std::to_string(a) +
                                 " vs " + std::to_string(b));
}

// Multiplies by the phase making the first non-negligible amplitude real
// positive. Used wherever a ket must be chosen deterministically.
Vector canonical_phase(Vector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      break;
    }
  }
  return v;
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix entries, const Tolerances& tol) {
  if (entries.rows() != entries.cols())
    throw InvalidInput("Hermitian operator must be square");
  if (entries.rows() < 2) throw InvalidInput("dimension must be at least 2");
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol.hermiticity)
    throw InvalidInput("matrix is not Hermitian (asymmetry " +
                       std::to_string(asym) + ")");
  mat_ = 0.5 * (entries + entries.adjoint().eval());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  require_same_dim(dim(), o.dim());
  return HermitianOperator(mat_ + o.mat_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  require_same_dim(dim(), o.dim());
  return HermitianOperator(mat_ - o.mat_);
}

HermitianOperator HermitianOperator::scaled(double s) const {
  return HermitianOperator(s * mat_);
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(Matrix::Identity(dim, dim));
}

PureState::PureState(Vector amplitudes, const Tolerances& tol) {
  if (amplitudes.size() < 2) throw InvalidInput("dimension must be at least 2");
  const double n = amplitudes.norm();
  if (std::abs(n - 1.0) > tol.unit_norm)
    throw InvalidInput("state is not normalized (norm " + std::to_string(n) + ")");
  // kept verbatim (not renormalized) so serialization round-trips bit-exactly
  amp_ = std::move(amplitudes);
}

HermitianOperator PureState::projector() const {
  return HermitianOperator(amp_ * amp_.adjoint());
}

PureState PureState::conjugated() const { return PureState(amp_.conjugate()); }

PureState PureState::basis(int dim, int k) {
  if (k < 0 || k >= dim) throw InvalidInput("basis index out of range");
  Vector v = Vector::Zero(dim);
  v[k] = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(HermitianOperator op, const Tolerances& tol)
    : op_(std::move(op)) {
  const double tr = op_.matrix().trace().real();
  if (std::abs(tr - 1.0) > tol.trace_one)
    throw InvalidInput("density matrix trace is " + std::to_string(tr));
  if (psd_min_eig(op_) < -tol.psd)
    throw InvalidInput("density matrix has a negative eigenvalue");
}

DensityMatrix::DensityMatrix(const PureState& psi) : op_(psi.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(
      HermitianOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

Povm::Povm(std::vector<HermitianOperator> elements, const Tolerances& tol)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidInput("POVM needs at least one element");
  const int d = elements_.front().dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : elements_) {
    require_same_dim(e.dim(), d);
    if (psd_min_eig(e) < -tol.psd)
      throw InvalidInput("POVM element has a negative eigenvalue");
    sum += e.matrix();
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol.povm_completeness)
    throw InvalidInput("POVM elements do not sum to the identity");
}

DensityMatrix SymOp::apply(const DensityMatrix& rho) const {
  Matrix m = conjugate ? rho.matrix().conjugate() : rho.matrix();
  return DensityMatrix(HermitianOperator(unitary * m * unitary.adjoint()));
}

PureState SymOp::apply(const PureState& psi) const {
  Vector v = conjugate ? psi.amplitudes().conjugate() : psi.amplitudes();
  return PureState(unitary * v);
}

bool SymOp::is_valid(const Tolerances& tol) const {
  const auto d = unitary.rows();
  return (unitary * unitary.adjoint() - Matrix::Identity(d, d))
             .cwiseAbs()
             .maxCoeff() <= tol.unitarity;
}

SymOp SymOp::identity(int dim) {
  return SymOp{Matrix::Identity(dim, dim), false};
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim());
  const auto solver = eigh(a.matrix() - b.matrix());
  return solver.eigenvalues().cwiseAbs().sum();
}

double overlap(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim());
  const Complex t = (a.matrix() * b.matrix()).trace();
  if (std::abs(t.imag()) > Tolerances::defaults().overlap_imag)
    throw InvalidInput("overlap has a non-real residue");
  return t.real();
}

double overlap(const PureState& a, const PureState& b) {
  require_same_dim(a.dim(), b.dim());
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double purity(const DensityMatrix& a) { return a.matrix().squaredNorm(); }

std::pair<PureState, double> top_eigenstate(const DensityMatrix& a,
                                            const Tolerances& tol) {
  const auto solver = eigh(a.matrix());
  const auto& vals = solver.eigenvalues();
  const int d = a.dim();
  const double top = vals[d - 1];
  Vector best;
  for (int i = d - 1; i >= 0 && vals[i] >= top - tol.tie_break; --i) {
    Vector cand = canonical_phase(solver.eigenvectors().col(i));
    if (best.size() == 0 || lex_less(cand, best)) best = std::move(cand);
  }
  return {PureState(std::move(best)), top};
}

Povm helstrom(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim());
  const int d = a.dim();
  const auto solver = eigh(a.matrix() - b.matrix());
  Matrix m2 = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (solver.eigenvalues()[i] > 0.0) {
      const Vector v = solver.eigenvectors().col(i);
      m2 += v * v.adjoint();
    }
  }
  std::vector<HermitianOperator> elems;
  elems.emplace_back(Matrix::Identity(d, d) - m2);
  elems.emplace_back(std::move(m2));
  return Povm(std::move(elems));
}

double psd_min_eig(const HermitianOperator& h) {
  return eigh(h.matrix()).eigenvalues().minCoeff();
}

namespace {

HermitianOperator sqrt_with(const HermitianOperator& g, bool invert,
                            const Tolerances& tol) {
  const auto solver = eigh(g.matrix());
  const auto& vals = solver.eigenvalues();
  if (vals.minCoeff() < -tol.psd_sqrt_floor)
    throw InvalidInput("matrix is not positive semidefinite");
  const double cutoff = std::max(vals.maxCoeff(), 0.0) * tol.support_rel;
  Eigen::VectorXd d(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] <= cutoff) {
      d[i] = 0.0;
    } else {
      d[i] = invert ? 1.0 / std::sqrt(vals[i]) : std::sqrt(vals[i]);
    }
  }
  const Matrix& v = solver.eigenvectors();
  return HermitianOperator(v * d.asDiagonal() * v.adjoint());
}

}  // namespace

HermitianOperator psd_sqrt(const HermitianOperator& g, const Tolerances& tol) {
  return sqrt_with(g, false, tol);
}

HermitianOperator psd_inv_sqrt(const HermitianOperator& g, const Tolerances& tol) {
  return sqrt_with(g, true, tol);
}

}  // namespace pmst
