#include <benchmark/benchmark.h>

#include "pmst/certificates.hpp"
#include "pmst/random.hpp"
#include "pmst/reconstruction.hpp"
#include "pmst/tomography.hpp"

using namespace pmst;

namespace {

void BM_reconstruct(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(21);
  std::vector<PureState> refs =
      randomize_basis({random_pure_state(d, rng)}, 5).states;
  for (const auto& s : fiducial_set(d).all()) refs.push_back(s);
  const SymOp hidden{haar_unitary(d, rng), true};
  std::vector<DensityMatrix> prepared;
  for (const auto& s : refs) prepared.push_back(hidden.apply(DensityMatrix(s)));
  for (auto _ : state)
    benchmark::DoNotOptimize(reconstruct(prepared, refs, {1, std::nullopt}));
}
BENCHMARK(BM_reconstruct)->Arg(3)->Arg(4)->Arg(6)->Arg(8);

void BM_delta_chain(benchmark::State& state) {
  const std::vector<double> f{10.0, 12.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(delta_chain(1e-8, 1e-8, 4, f));
}
BENCHMARK(BM_delta_chain);

void BM_tomography_operator(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(22);
  const PureState psi =
      randomize_basis({random_pure_state(d, rng)}, 9).states[0];
  double mn = 1.0;
  for (int k = 0; k < d; ++k)
    mn = std::min(mn, std::norm(psi.amplitudes()[k]));
  const double f = 1.0 / mn;
  for (auto _ : state) benchmark::DoNotOptimize(tomography_operator(psi, f));
}
BENCHMARK(BM_tomography_operator)->Arg(3)->Arg(6)->Arg(12);

void BM_certificates(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(certificate_check("xx", 0, 3));
    benchmark::DoNotOptimize(certificate_check("yys", 0, 3));
    benchmark::DoNotOptimize(certificate_check("yy-recovery", 0, 3));
  }
}
BENCHMARK(BM_certificates);

}  // namespace
