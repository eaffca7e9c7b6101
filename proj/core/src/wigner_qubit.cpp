#include "pmst/wigner_qubit.hpp"

#include <cmath>

namespace pmst {

namespace {

const Matrix& pauli(int i) {
  static const Matrix sx = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  static const Matrix sy =
      (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Matrix sz = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  switch (i) {
    case 0: return sx;
    case 1: return sy;
    default: return sz;
  }
}

Eigen::MatrixXd real_psd_sqrt(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
  Eigen::VectorXd d = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * d.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

BlochVector bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw InvalidInput("Bloch vector needs a qubit state");
  BlochVector m;
  for (int i = 0; i < 3; ++i)
    m[i] = (rho.matrix() * pauli(i)).trace().real();
  return m;
}

DensityMatrix bloch_to_state(const BlochVector& m) {
  if (m.norm() > 1.0 + 1e-12)
    throw InvalidInput("Bloch vector lies outside the unit ball");
  Matrix rho = Matrix::Identity(2, 2);
  for (int i = 0; i < 3; ++i) rho += m[i] * pauli(i);
  return DensityMatrix(HermitianOperator(0.5 * rho));
}

BlochAlignment align_bloch(const std::vector<BlochVector>& ms,
                           const std::vector<BlochVector>& ns, double delta,
                           const Tolerances& tol) {
  const int n = static_cast<int>(ms.size());
  if (n == 0 || ns.size() != ms.size())
    throw InvalidInput("align_bloch needs equally many vectors on both sides");
  if (delta < 0.0) throw InvalidInput("delta must be nonnegative");
  for (const auto& v : ms)
    if (v.norm() > 1.0 + tol.unit_norm)
      throw InvalidInput("reference Bloch vector outside unit ball");
  for (const auto& v : ns)
    if (v.norm() > 1.0 + tol.unit_norm)
      throw InvalidInput("observed Bloch vector outside unit ball");

  Eigen::Matrix3Xd m3(3, n), n3(3, n);
  for (int k = 0; k < n; ++k) {
    m3.col(k) = ms[k];
    n3.col(k) = ns[k];
  }
  const Eigen::MatrixXd gm = m3.transpose() * m3;
  const Eigen::MatrixXd gn = n3.transpose() * n3;
  if (((gm - gn).cwiseAbs().maxCoeff()) > delta + tol.unit_norm)
    throw InvalidInput("overlap precondition violated beyond delta");

  const Eigen::MatrixXd sm = real_psd_sqrt(gm);
  const Eigen::MatrixXd sn = real_psd_sqrt(gn);

  // isometries onto the spans: obar m_k = sqrt(Gm) e_k, o n_k = sqrt(Gn) e_k
  const Eigen::MatrixXd obar =
      sm * m3.completeOrthogonalDecomposition().pseudoInverse();
  const Eigen::MatrixXd o =
      sn * n3.completeOrthogonalDecomposition().pseudoInverse();
  const Eigen::Matrix3d q = o.transpose() * obar;

  // span of the reference vectors and its complement
  Eigen::JacobiSVD<Eigen::Matrix3Xd> svd(m3, Eigen::ComputeFullU);
  const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > std::max(smax * 1e-12, 1e-14)) ++rank;

  Eigen::Matrix3d full = Eigen::Matrix3d::Zero();
  if (rank > 0) {
    const Eigen::MatrixXd bh = svd.matrixU().leftCols(rank);
    full = q * bh * bh.transpose();
  }
  if (rank < 3) {
    // orthonormalize the image, complete both sides, map complements in order
    Eigen::MatrixXd image(3, rank);
    if (rank > 0) {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(
          (q * svd.matrixU().leftCols(rank)).eval());
      image = Eigen::MatrixXd(qr.householderQ()).leftCols(rank);
      // keep orientation aligned with the unnormalized image
      for (int c = 0; c < rank; ++c)
        if (image.col(c).dot(q * svd.matrixU().col(c)) < 0.0) image.col(c) *= -1.0;
    }
    Eigen::MatrixXd ext(3, 3);
    ext.setIdentity();
    if (rank > 0) ext.leftCols(rank) = image;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr2(ext);
    const Eigen::MatrixXd comp_image =
        Eigen::MatrixXd(qr2.householderQ()).rightCols(3 - rank);
    const Eigen::MatrixXd comp_source = svd.matrixU().rightCols(3 - rank);
    full += comp_image * comp_source.transpose();
  }

  // polar orthogonal factor
  Eigen::JacobiSVD<Eigen::Matrix3d> polar(full,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
  BlochAlignment out;
  out.transform = polar.matrixU() * polar.matrixV().transpose();

  out.residuals.reserve(n);
  for (int k = 0; k < n; ++k)
    out.residuals.push_back((ns[k] - out.transform * ms[k]).norm());

  const double nd = n * delta;
  out.delta_prime = delta + nd + 2.0 * std::sqrt(nd);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> geig(gm);
  const double lmax = std::max(geig.eigenvalues().maxCoeff(), 0.0);
  out.c_prime = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lam = geig.eigenvalues()[i];
    if (lam > std::max(lmax * 1e-12, 1e-14)) {
      const double l1 = geig.eigenvectors().col(i).lpNorm<1>();
      out.c_prime += l1 * l1 / lam;
    }
  }
  out.bound = std::sqrt(nd) + std::sqrt(out.delta_prime * out.c_prime);
  return out;
}

SymOp orthogonal_to_quantum(const Eigen::Matrix3d& o, const Tolerances& tol) {
  if ((o * o.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() >
      tol.orthogonality)
    throw InvalidInput("input is not orthogonal");
  const double det = o.determinant();
  bool conj = false;
  Eigen::Matrix3d r = o;
  if (std::abs(det - 1.0) < tol.det_window) {
    // rotation
  } else if (std::abs(det + 1.0) < tol.det_window) {
    conj = true;
    r.col(1) *= -1.0;  // compose with the conjugation reflection diag(1,-1,1)
  } else {
    throw InvalidInput("determinant is not +-1");
  }

  // exact rotation via the polar projection, then the half-angle lift
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d rr = svd.matrixU() * svd.matrixV().transpose();
  if (rr.determinant() < 0.0) {
    Eigen::Matrix3d u = svd.matrixU();
    u.col(2) *= -1.0;
    rr = u * svd.matrixV().transpose();
  }
  const Eigen::AngleAxisd aa(rr);
  const double half = 0.5 * aa.angle();
  const Eigen::Vector3d ax = aa.axis();
  Matrix u = std::cos(half) * Matrix::Identity(2, 2);
  for (int i = 0; i < 3; ++i) {
    const Matrix sig = [&] {
      switch (i) {
        case 0: return (Matrix(2, 2) << 0, 1, 1, 0).finished();
        case 1: return (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
        default: return (Matrix(2, 2) << 1, 0, 0, -1).finished();
      }
    }();
    u -= Complex(0, 1) * std::sin(half) * ax[i] * sig;
  }
  // canonical global phase
  for (int col = 0; col < 2; ++col) {
    if (std::abs(u(0, col)) > 1e-12) {
      u *= std::conj(u(0, col)) / std::abs(u(0, col));
      break;
    }
  }
  return SymOp{u, conj};
}

}  // namespace pmst
