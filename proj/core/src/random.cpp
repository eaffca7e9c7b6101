#include "pmst/random.hpp"

#include <cmath>
#include <numbers>

namespace pmst {

double Rng::uniform() {
  // 53 random mantissa bits
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

Rng Rng::fork(std::uint64_t stream_index) {
  // splitmix-style mixing of the parent seed material with the stream index
  std::uint64_t z = gen_() + 0x9e3779b97f4a7c15ull * (stream_index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return Rng(z ^ (z >> 31));
}

Matrix haar_unitary(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex rii = r(i, i);
    const double mag = std::abs(rii);
    q.col(i) *= (mag > 0.0) ? rii / mag : Complex(1.0, 0.0);
  }
  return q;
}

PureState random_pure_state(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.complex_gaussian();
  return PureState(v / v.norm());
}

DensityMatrix random_density_matrix(int dim, Rng& rng, int rank) {
  if (rank <= 0 || rank > dim) rank = dim;
  const Matrix u = haar_unitary(dim, rng);
  Eigen::VectorXd w(rank);
  double total = 0.0;
  for (int i = 0; i < rank; ++i) {
    const double g = rng.gaussian();
    w[i] = g * g;
    total += w[i];
  }
  Matrix rho = Matrix::Zero(dim, dim);
  for (int i = 0; i < rank; ++i)
    rho += (w[i] / total) * (u.col(i) * u.col(i).adjoint());
  return DensityMatrix(HermitianOperator(rho));
}

Povm random_povm(int dim, int outcomes, Rng& rng) {
  if (outcomes < 1) throw InvalidInput("POVM needs at least one outcome");
  std::vector<Matrix> blocks;
  Matrix sum = Matrix::Zero(dim, dim);
  for (int b = 0; b < outcomes; ++b) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_gaussian();
    Matrix a = g * g.adjoint();
    sum += a;
    blocks.push_back(std::move(a));
  }
  const Matrix s = psd_inv_sqrt(HermitianOperator(sum)).matrix();
  std::vector<HermitianOperator> elems;
  elems.reserve(blocks.size());
  for (const auto& a : blocks) elems.emplace_back(Matrix(s * a * s));
  return Povm(std::move(elems));
}

}  // namespace pmst
