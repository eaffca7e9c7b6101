#pragma once

#include <cstdint>
#include <random>

#include "pmst/qmat.hpp"

namespace pmst {

/// Deterministic random stream. Gaussians come from an explicit Box-Muller
/// transform over raw mt19937_64 output, so a fixed seed reproduces the same
/// bits on every standard-conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();   // [0, 1)
  double gaussian();  // standard normal
  Complex complex_gaussian();
  std::uint64_t bits() { return gen_(); }

  /// Derives an independent stream (for per-trial parallel suites).
  Rng fork(std::uint64_t stream_index);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed unitary via QR of a complex Gaussian matrix with the
/// R-diagonal phases fixed.
Matrix haar_unitary(int dim, Rng& rng);

PureState random_pure_state(int dim, Rng& rng);

/// Mixture of `rank` Haar-random pure states with random weights
/// (rank = 0 means full rank).
DensityMatrix random_density_matrix(int dim, Rng& rng, int rank = 0);

/// Random POVM with `outcomes` elements: Wishart blocks normalized by the
/// inverse square root of their sum.
Povm random_povm(int dim, int outcomes, Rng& rng);

}  // namespace pmst
