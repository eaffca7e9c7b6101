#include <doctest.h>

#include <cmath>

#include "pmst/counterexamples.hpp"
#include "pmst/random.hpp"
#include "pmst/witness.hpp"

using namespace pmst;

namespace {

WeightedEnsemble qubit_basis() {
  return complete_ensemble({PureState::basis(2, 0), PureState::basis(2, 1)});
}

// a behavior produced by arbitrary states and two-outcome measurements
Behavior random_realization(const WeightedEnsemble& e, Rng& rng) {
  const int n = e.size();
  const PairIndexer pairs{n};
  std::vector<double> table(static_cast<std::size_t>(n) * pairs.count() * 2);
  for (int y = 0; y < pairs.count(); ++y) {
    const Povm m = random_povm(e.dim, 2, rng);
    for (int x = 0; x < n; ++x) {
      const DensityMatrix rho = random_density_matrix(e.dim, rng);
      const double p2 = (rho.matrix() * m.element(1).matrix()).trace().real();
      table[(static_cast<std::size_t>(x) * pairs.count() + y) * 2 + 0] = 1.0 - p2;
      table[(static_cast<std::size_t>(x) * pairs.count() + y) * 2 + 1] = p2;
    }
  }
  return Behavior(n, pairs.count(), 2, std::move(table));
}

// all states depolarized by p, discriminated by their own Helstrom pairs
Behavior depolarized_realization(const WeightedEnsemble& e, double p,
                                 std::vector<DensityMatrix>& rho_out) {
  const int n = e.size();
  const int d = e.dim;
  const PairIndexer pairs{n};
  rho_out.clear();
  for (const auto& s : e.states)
    rho_out.emplace_back(HermitianOperator(
        Matrix((1.0 - p) * s.projector().matrix() +
               p * Matrix::Identity(d, d) / d)));
  std::vector<double> table(static_cast<std::size_t>(n) * pairs.count() * 2);
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      const Povm m = helstrom(rho_out[i], rho_out[j]);
      const int y = pairs.y_of(i, j);
      for (int x = 0; x < n; ++x) {
        const double p2 =
            (rho_out[x].matrix() * m.element(1).matrix()).trace().real();
        table[(static_cast<std::size_t>(x) * pairs.count() + y) * 2 + 0] =
            1.0 - p2;
        table[(static_cast<std::size_t>(x) * pairs.count() + y) * 2 + 1] = p2;
      }
    }
  }
  return Behavior(n, pairs.count(), 2, std::move(table));
}

}  // namespace

TEST_CASE("pair enumeration is j-major") {
  const PairIndexer p{4};
  CHECK(p.count() == 6);
  CHECK(p.y_of(1, 0) == 0);
  CHECK(p.y_of(2, 0) == 1);
  CHECK(p.y_of(3, 0) == 2);
  CHECK(p.y_of(2, 1) == 3);
  CHECK(p.y_of(3, 1) == 4);
  CHECK(p.y_of(3, 2) == 5);
  for (int y = 0; y < 6; ++y) {
    const auto [i, j] = p.pair_of(y);
    CHECK(p.y_of(i, j) == y);
  }
}

TEST_CASE("witness coefficients for the qubit basis") {
  const StateWitness w = build_state_witness(qubit_basis());
  CHECK(w.pairs.count() == 1);
  CHECK(w.coeff(1, 0) == doctest::Approx(0.5));  // (1/4) * 2
  CHECK(w.w_star == doctest::Approx(0.5));
}

TEST_CASE("witness coefficients for the completed SIC family") {
  const WeightedEnsemble e = complete_ensemble(sic_family(0.0));
  const StateWitness w = build_state_witness(e);
  CHECK(w.pairs.count() == 36);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < i; ++j)
      CHECK(w.coeff(i, j) ==
            doctest::Approx(std::sqrt(3.0) / 81.0).epsilon(1e-12));
  CHECK(w.w_star == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("witness requires a completed ensemble") {
  WeightedEnsemble raw({PureState::basis(2, 0)}, {1.0}, false);
  CHECK_THROWS_AS(build_state_witness(raw), InvalidInput);
}

TEST_CASE("ideal behavior saturates the witness") {
  SUBCASE("qubit basis in detail") {
    const WeightedEnsemble e = qubit_basis();
    const Behavior p = ideal_behavior(e);
    // outcome 2 projects on the positive part of psi_i - psi_j (i > j)
    CHECK(p.p(1, 0, 1) == doctest::Approx(1.0));
    CHECK(p.p(0, 0, 1) == doctest::Approx(0.0));
    const StateWitness w = build_state_witness(e);
    CHECK(eval_witness(w, p) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("completed SIC reaches 2/3") {
    const WeightedEnsemble e = complete_ensemble(sic_family(0.0));
    const StateWitness w = build_state_witness(e);
    CHECK(std::abs(eval_witness(w, ideal_behavior(e)) - 2.0 / 3.0) < 1e-9);
  }
  SUBCASE("random completed ensembles reach 1 - 1/D") {
    Rng rng(404);
    for (int d = 2; d <= 5; ++d) {
      for (int trial = 0; trial < 25; ++trial) {
        const int m = 1 + static_cast<int>(rng.bits() % 5);
        std::vector<PureState> states;
        for (int i = 0; i < m; ++i) states.push_back(random_pure_state(d, rng));
        const WeightedEnsemble e = complete_ensemble(states);
        const StateWitness w = build_state_witness(e);
        CHECK(std::abs(eval_witness(w, ideal_behavior(e)) - (1.0 - 1.0 / d)) <
              1e-9);
      }
    }
  }
}

TEST_CASE("soundness: random realizations never beat the bound") {
  Rng rng(505);
  for (int d = 2; d <= 4; ++d) {
    const WeightedEnsemble e = complete_ensemble(
        {random_pure_state(d, rng), random_pure_state(d, rng)});
    const StateWitness w = build_state_witness(e);
    for (int trial = 0; trial < 100; ++trial) {
      const Behavior p = random_realization(e, rng);
      CHECK(eval_witness(w, p) <= w.w_star + 1e-9);
    }
  }
}

TEST_CASE("uniform behavior scores zero") {
  const WeightedEnsemble e = qubit_basis();
  const StateWitness w = build_state_witness(e);
  std::vector<double> flat(2 * 1 * 2, 0.5);
  CHECK(eval_witness(w, Behavior(2, 1, 2, flat)) == doctest::Approx(0.0));
}

TEST_CASE("eval accepts larger behaviors and rejects smaller ones") {
  const WeightedEnsemble e = qubit_basis();
  const StateWitness w = build_state_witness(e);
  // one extra preparation, measurement, and outcome
  std::vector<double> big(3 * 2 * 3, 0.0);
  const auto at = [&](int x, int y, int b) -> double& {
    return big[(static_cast<std::size_t>(x) * 2 + y) * 3 + b];
  };
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y) at(x, y, 0) = 1.0;
  at(1, 0, 0) = 0.0;
  at(1, 0, 1) = 1.0;  // P(2|x=1,y=(1,0)) = 1
  const double val = eval_witness(w, Behavior(3, 2, 3, big));
  CHECK(val == doctest::Approx(0.5 * (1.0 - 0.0)));

  std::vector<double> tiny(1 * 1 * 2, 0.5);
  CHECK_THROWS_AS(eval_witness(w, Behavior(1, 1, 2, tiny)), InvalidInput);
}

TEST_CASE("c-vector facts") {
  Rng rng(606);
  SUBCASE("pure states: c equals d entrywise") {
    std::vector<DensityMatrix> rho;
    std::vector<double> weights;
    for (int i = 0; i < 4; ++i) {
      rho.emplace_back(random_pure_state(3, rng));
      weights.push_back(0.25);
    }
    const CVector v = cvec(rho, weights);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < i; ++j)
        CHECK(v.c(i, j) == doctest::Approx(v.d(i, j)).epsilon(1e-9));
  }
  SUBCASE("identical mixed states: c = 0, d sees the impurity") {
    const DensityMatrix rho = random_density_matrix(3, rng);
    const CVector v = cvec({rho, rho}, {0.5, 0.5});
    CHECK(v.c(1, 0) == doctest::Approx(0.0));
    CHECK(v.d(1, 0) ==
          doctest::Approx(2.0 * 0.5 * std::sqrt(1.0 - purity(rho))));
  }
  SUBCASE("norm chain on random weighted ensembles") {
    for (int trial = 0; trial < 100; ++trial) {
      const int d = 2 + static_cast<int>(rng.bits() % 4);
      const int n = 2 + static_cast<int>(rng.bits() % 5);
      std::vector<DensityMatrix> rho;
      std::vector<double> weights;
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        rho.push_back(random_density_matrix(d, rng));
        const double g = rng.gaussian();
        weights.push_back(g * g + 1e-3);
        total += weights.back();
      }
      for (double& w : weights) w /= total;
      const CVector v = cvec(rho, weights);
      Matrix avg = Matrix::Zero(d, d);
      for (int i = 0; i < n; ++i) avg += weights[i] * rho[i].matrix();
      const double avg_purity = avg.squaredNorm();
      CHECK(v.c_norm_sq <= 2.0 * (1.0 - avg_purity) + 1e-10);
      CHECK(2.0 * (1.0 - avg_purity) <= 2.0 * (1.0 - 1.0 / d) + 1e-10);
      CHECK(v.c_norm_sq <= v.d_norm_sq + 1e-12);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) CHECK(v.c(i, j) <= v.d(i, j) + 1e-12);
    }
  }
}

TEST_CASE("robust overlap bounds") {
  SUBCASE("zero deficit gives zero bounds") {
    const auto b = robust_overlap_bounds(0.0, {0.5, 0.5}, 2);
    CHECK(b.delta_o == 0.0);
    CHECK(b.delta_p == 0.0);
  }
  SUBCASE("formula values") {
    std::vector<double> alpha(9, 1.0 / 9.0);
    const double eps = 1e-4;
    const auto b = robust_overlap_bounds(eps, alpha, 3);
    CHECK(b.delta_p == doctest::Approx(2.0 * eps / (9.0 / 81.0)));
    CHECK(b.delta_o == doctest::Approx(std::sqrt(8.0 * eps) / (1.0 / 9.0)));
  }
  SUBCASE("range validation") {
    CHECK_THROWS_AS(robust_overlap_bounds(-0.1, {0.5, 0.5}, 2), InvalidInput);
    CHECK_THROWS_AS(robust_overlap_bounds(0.6, {0.5, 0.5}, 2), InvalidInput);
  }
}

TEST_CASE("deficit bounds dominate measured deviations under depolarizing") {
  Rng rng(707);
  for (int d = 2; d <= 4; ++d) {
    for (double p : {1e-5, 1e-4}) {
      for (int trial = 0; trial < 25; ++trial) {
        const WeightedEnsemble e = complete_ensemble(
            {random_pure_state(d, rng), random_pure_state(d, rng)});
        const StateWitness w = build_state_witness(e);
        std::vector<DensityMatrix> rho;
        const Behavior behavior = depolarized_realization(e, p, rho);
        const double eps = std::max(0.0, w.w_star - eval_witness(w, behavior));
        const auto bounds = robust_overlap_bounds(eps, e.weights, d);
        for (int i = 0; i < e.size(); ++i) {
          CHECK(1.0 - purity(rho[i]) <= bounds.delta_p + 1e-12);
          for (int j = 0; j < i; ++j) {
            const double dev = std::abs(overlap(rho[i], rho[j]) -
                                        overlap(DensityMatrix(e.states[i]),
                                                DensityMatrix(e.states[j])));
            CHECK(dev <= bounds.delta_o + 1e-12);
          }
        }
      }
    }
  }
}
