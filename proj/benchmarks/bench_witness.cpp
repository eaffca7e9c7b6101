#include <benchmark/benchmark.h>

#include "pmst/ensemble.hpp"
#include "pmst/random.hpp"
#include "pmst/witness.hpp"

using namespace pmst;

namespace {

WeightedEnsemble make_ensemble(int d, int m) {
  Rng rng(11);
  std::vector<PureState> states;
  for (int i = 0; i < m; ++i) states.push_back(random_pure_state(d, rng));
  return complete_ensemble(states);
}

void BM_complete_ensemble(benchmark::State& state) {
  Rng rng(12);
  const int d = static_cast<int>(state.range(0));
  std::vector<PureState> states;
  for (int i = 0; i < 6; ++i) states.push_back(random_pure_state(d, rng));
  for (auto _ : state) benchmark::DoNotOptimize(complete_ensemble(states));
}
BENCHMARK(BM_complete_ensemble)->Arg(3)->Arg(6)->Arg(12);

void BM_ideal_behavior(benchmark::State& state) {
  const WeightedEnsemble e = make_ensemble(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ideal_behavior(e));
}
BENCHMARK(BM_ideal_behavior)->Arg(4)->Arg(8)->Arg(16);

void BM_eval_witness(benchmark::State& state) {
  const WeightedEnsemble e = make_ensemble(3, static_cast<int>(state.range(0)));
  const StateWitness w = build_state_witness(e);
  const Behavior b = ideal_behavior(e);
  for (auto _ : state) benchmark::DoNotOptimize(eval_witness(w, b));
}
BENCHMARK(BM_eval_witness)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
