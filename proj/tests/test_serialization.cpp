#include <doctest.h>

#include "pmst/counterexamples.hpp"
#include "pmst/povm_selftest.hpp"
#include "pmst/random.hpp"
#include "pmst/serialization.hpp"

using namespace pmst;

TEST_CASE("scenario files round-trip bit-identically") {
  Rng rng(411);
  ScenarioPayload s;
  s.dimension = 3;
  for (int i = 0; i < 3; ++i) {
    const PureState ket = random_pure_state(3, rng);
    s.kets.emplace_back(ket);
    s.states.emplace_back(ket);
  }
  s.states.push_back(random_density_matrix(3, rng));
  s.kets.emplace_back(std::nullopt);
  s.weights = {0.25, 0.25, 0.25, 0.25};
  s.povms.push_back(example_povm());
  s.seed = 123456789ull;

  const std::string once = scenario_to_json(s);
  const ScenarioPayload parsed = scenario_from_json(once);
  const std::string twice = scenario_to_json(parsed);
  CHECK(once == twice);
  CHECK(parsed.dimension == 3);
  CHECK(parsed.states.size() == 4);
  CHECK(parsed.weights == s.weights);
  CHECK(parsed.seed == s.seed);
  CHECK(parsed.kets[0].has_value());
  CHECK_FALSE(parsed.kets[3].has_value());
}

TEST_CASE("ensembles serialize through the scenario format") {
  const WeightedEnsemble e = complete_ensemble({PureState::basis(2, 0)});
  const ScenarioPayload s = ScenarioPayload::from_ensemble(e);
  const ScenarioPayload back = scenario_from_json(scenario_to_json(s));
  const WeightedEnsemble e2 = back.as_ensemble(true);
  CHECK(e2.size() == e.size());
  CHECK(e2.weights == e.weights);
}

TEST_CASE("behavior files round-trip bit-identically") {
  const WeightedEnsemble e =
      complete_ensemble({PureState::basis(2, 0), PureState::basis(2, 1)});
  const Behavior b = ideal_behavior(e);
  const std::string once = behavior_to_json(b);
  const Behavior parsed = behavior_from_json(once);
  CHECK(behavior_to_json(parsed) == once);
  CHECK(parsed.X() == b.X());
  CHECK(parsed.table() == b.table());
}

TEST_CASE("delta chains round-trip, including infinities") {
  const DeltaChain feasible = delta_chain(1e-8, 1e-8, 3, {10.0});
  CHECK(delta_chain_to_json(delta_chain_from_json(
            delta_chain_to_json(feasible))) == delta_chain_to_json(feasible));

  const DeltaChain infeasible = delta_chain(0.5, 0.5, 3, {10.0});
  CHECK_FALSE(infeasible.cond3);
  const std::string once = delta_chain_to_json(infeasible);
  const DeltaChain parsed = delta_chain_from_json(once);
  CHECK(std::isinf(parsed.dy));
  CHECK(delta_chain_to_json(parsed) == once);
}

TEST_CASE("reconstruction reports round-trip") {
  Rng rng(422);
  std::vector<PureState> refs;
  refs.push_back(randomize_basis({random_pure_state(3, rng)}, 1).states[0]);
  for (const auto& s : fiducial_set(3).all()) refs.push_back(s);
  std::vector<DensityMatrix> prepared;
  const SymOp hidden{haar_unitary(3, rng), true};
  for (const auto& s : refs) prepared.push_back(hidden.apply(DensityMatrix(s)));
  const ReconstructionReport r = reconstruct(prepared, refs, {1, std::nullopt});

  const std::string once = report_to_json(r);
  const ReconstructionReport parsed = report_from_json(once);
  CHECK(report_to_json(parsed) == once);
  CHECK(parsed.symmetry.conjugate == r.symmetry.conjugate);
  CHECK(parsed.checks.size() == r.checks.size());
}

TEST_CASE("parse errors name the offending field") {
  CHECK_THROWS_WITH_AS(scenario_from_json("{\"states\": []}"),
                       doctest::Contains("dimension"), InvalidInput);
  CHECK_THROWS_WITH_AS(
      scenario_from_json("{\"dimension\": 2, \"states\": [{\"ket\": [[1,0]]}]}"),
      doctest::Contains("states[0].ket"), InvalidInput);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          "{\"dimension\": 2, \"states\": [{\"ket\": [[1,0],[0,0]]}], "
          "\"weights\": [1, 2]}"),
      doctest::Contains("weights"), InvalidInput);
  CHECK_THROWS_WITH_AS(behavior_from_json("{\"X\": 1, \"Y\": 1, \"B\": 2}"),
                       doctest::Contains("table"), InvalidInput);
  CHECK_THROWS_AS(scenario_from_json("not json at all"), InvalidInput);
}

TEST_CASE("rho entries must be Hermitian and normalized") {
  const std::string bad_trace =
      "{\"dimension\": 2, \"states\": [{\"rho\": "
      "[[[1,0],[0,0]],[[0,0],[1,0]]]}]}";
  CHECK_THROWS_AS(scenario_from_json(bad_trace), InvalidInput);
}

TEST_CASE("digest is stable and input-sensitive") {
  const std::string a = content_digest("hello");
  CHECK(a == content_digest("hello"));
  CHECK(a != content_digest("hello "));
  CHECK(a.size() == 16);
}
