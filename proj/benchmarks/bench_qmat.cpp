#include <benchmark/benchmark.h>

#include "pmst/qmat.hpp"
#include "pmst/random.hpp"

using namespace pmst;

namespace {

void BM_trace_distance(benchmark::State& state) {
  Rng rng(1);
  const int d = static_cast<int>(state.range(0));
  const DensityMatrix a = random_density_matrix(d, rng);
  const DensityMatrix b = random_density_matrix(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(trace_distance(a, b));
}
BENCHMARK(BM_trace_distance)->Arg(4)->Arg(16)->Arg(64);

void BM_helstrom(benchmark::State& state) {
  Rng rng(2);
  const int d = static_cast<int>(state.range(0));
  const DensityMatrix a = random_density_matrix(d, rng);
  const DensityMatrix b = random_density_matrix(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(helstrom(a, b));
}
BENCHMARK(BM_helstrom)->Arg(4)->Arg(16)->Arg(64);

void BM_psd_sqrt(benchmark::State& state) {
  Rng rng(3);
  const int d = static_cast<int>(state.range(0));
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
  const HermitianOperator psd{Matrix(g * g.adjoint())};
  for (auto _ : state) benchmark::DoNotOptimize(psd_sqrt(psd));
}
BENCHMARK(BM_psd_sqrt)->Arg(4)->Arg(16)->Arg(64);

void BM_haar_unitary(benchmark::State& state) {
  Rng rng(4);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(d, rng));
}
BENCHMARK(BM_haar_unitary)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
