#include <benchmark/benchmark.h>

#include "vortexlab/dynamics.hpp"
#include "vortexlab/entanglement.hpp"
#include "vortexlab/kinematics.hpp"
#include "vortexlab/quadrature.hpp"

using namespace vortexlab;

namespace {

const VortexState kState{0.5, 0.2, -0.3, 0.6};

void BM_NormQuadrature(benchmark::State& st) {
  const auto p = ModelParams::create(0.25, 1.0);
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(norm_quadrature(p, kState, n));
}
BENCHMARK(BM_NormQuadrature)->Arg(5)->Arg(7)->Arg(12);

void BM_VelocityField(benchmark::State& st) {
  const VortexFlow flow(ModelParams::create(0.25, 1.0));
  for (auto _ : st) benchmark::DoNotOptimize(flow.velocity(kState));
}
BENCHMARK(BM_VelocityField);

void BM_Integrate(benchmark::State& st) {
  const auto p = ModelParams::create(0.25, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(integrate(p, kState, 100.0));
}
BENCHMARK(BM_Integrate)->Unit(benchmark::kMillisecond);

void BM_EntropyGram(benchmark::State& st) {
  const auto p = ModelParams::create(0.25, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(entropy_gram(p, kState));
}
BENCHMARK(BM_EntropyGram);

void BM_FindNodes(benchmark::State& st) {
  const auto psi = ansatz_slice(ModelParams::create(0.25, 1.0), kState, {0.2, 0.1});
  const SearchBox box{-3, 3, -3, 3};
  for (auto _ : st) benchmark::DoNotOptimize(find_nodes(psi, box, 128));
}
BENCHMARK(BM_FindNodes)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
