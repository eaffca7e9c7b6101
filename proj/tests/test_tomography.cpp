#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pmst/ensemble.hpp"
#include "pmst/random.hpp"
#include "pmst/tomography.hpp"

using namespace pmst;

namespace {

PureState uniform_state(int d) {
  Vector v = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  return PureState(v);
}

double max_abs_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

void check_certificate(const TomographyCertificate& cert) {
  const Matrix proj = cert.target.projector().matrix();
  // tr(H psi psi+) = 1
  CHECK(std::abs((cert.h.matrix() * proj).trace().real() - 1.0) < 1e-8);
  // psi psi+ - H >= 0
  CHECK(psd_min_eig(HermitianOperator(Matrix(proj - cert.h.matrix()))) >
        -1e-8);
  // 1-norm caps
  CHECK(cert.lambda.lpNorm<1>() <= cert.lambda_cap + 1e-9);
  CHECK(cert.mu.lpNorm<1>() <= cert.mu_cap + 1e-9);
  CHECK(cert.nu.lpNorm<1>() <= cert.mu_cap + 1e-9);
}

}  // namespace

TEST_CASE("tridiagonal spectrum formula") {
  const auto s3 = tridiagonal_spectrum(3);
  CHECK(s3[0] == doctest::Approx(0.0));
  CHECK(s3[1] == doctest::Approx(0.5));
  CHECK(s3[2] == doctest::Approx(1.5));
  const auto s2 = tridiagonal_spectrum(2);
  CHECK(s2[0] == doctest::Approx(0.0));
  CHECK(s2[1] == doctest::Approx(1.0));
}

TEST_CASE("tridiagonal operator matches its closed-form spectrum up to D=50") {
  for (int d = 2; d <= 50; ++d) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(tridiagonal_operator(d));
    const auto expect = tridiagonal_spectrum(d);
    for (int j = 0; j < d; ++j)
      CHECK(std::abs(eig.eigenvalues()[j] - expect[j]) < 1e-12);
  }
}

TEST_CASE("the zero mode is the uniform vector") {
  for (int d : {2, 3, 7, 20}) {
    const Matrix h = tridiagonal_operator(d);
    const Vector v = uniform_state(d).amplitudes();
    CHECK((h * v).norm() < 1e-12);
  }
}

TEST_CASE("xi constant") {
  CHECK(xi_constant(3, 10.0) ==
        doctest::Approx((1.0 / (1.0 - 2.0 / 10.0)) *
                        (1.0 - std::cos(std::numbers::pi / 3.0))));
  CHECK_THROWS_AS(xi_constant(3, 2.0), InvalidInput);  // f <= D-1
  CHECK_THROWS_AS(xi_constant(3, 1.0), InvalidInput);
}

TEST_CASE("tomography certificate for the uniform state at f = D") {
  for (int d = 2; d <= 6; ++d) {
    const auto cert = tomography_operator(uniform_state(d), d);
    check_certificate(cert);
  }
}

TEST_CASE("tomography certificate for D=2 uses the single X, Y pair") {
  const auto cert = tomography_operator(uniform_state(2), 3.0);
  CHECK(cert.mu.size() == 1);
  CHECK(cert.nu.size() == 1);
  check_certificate(cert);
}

TEST_CASE("tomography certificate equals the direct construction") {
  Rng rng(912);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + static_cast<int>(rng.bits() % 5);
    const PureState psi = randomize_basis({random_pure_state(d, rng)},
                                          rng.bits())
                              .states[0];
    double mn = 1.0;
    for (int k = 0; k < d; ++k)
      mn = std::min(mn, std::norm(psi.amplitudes()[k]));
    const double f = 1.0 / mn;
    const auto cert = tomography_operator(psi, f);

    Matrix cinv = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) cinv(k, k) = 1.0 / psi.amplitudes()[k];
    const Matrix hp = cinv.adjoint() * tridiagonal_operator(d) * cinv;
    const Matrix direct =
        Matrix::Identity(d, d) - hp / xi_constant(d, f);
    CHECK(max_abs_eig(cert.h.matrix() - direct) < 1e-8 * f * f);
  }
}

TEST_CASE("tomography certificates hold for random generic states") {
  Rng rng(913);
  for (int d = 2; d <= 6; ++d) {
    for (int trial = 0; trial < 100; ++trial) {
      const PureState psi =
          randomize_basis({random_pure_state(d, rng)}, rng.bits()).states[0];
      double mn = 1.0;
      for (int k = 0; k < d; ++k)
        mn = std::min(mn, std::norm(psi.amplitudes()[k]));
      const auto cert = tomography_operator(psi, 1.0 / mn);
      check_certificate(cert);
    }
  }
}

TEST_CASE("tomography rejects states violating the floor") {
  CHECK_THROWS_AS(tomography_operator(PureState::basis(3, 0), 10.0),
                  InvalidInput);
}
