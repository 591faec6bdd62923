#include <benchmark/benchmark.h>

#include "jager/expansion.hpp"
#include "jager/geometry.hpp"
#include "jager/harness.hpp"

namespace {

using namespace jager;

void BM_Expand(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  const Params p(0, "sqrt(2)", bits, 40);
  const BigReal x0 = evaluate_seed("(sqrt(5)-1)/2", p);
  for (auto _ : state) benchmark::DoNotOptimize(expand(x0, p));
}
BENCHMARK(BM_Expand)->Arg(128)->Arg(256)->Arg(1024);

void BM_ThetaSequence(benchmark::State& state) {
  const Params p(1, "2", 256, 40);
  const Orbit o = expand(evaluate_seed("pi-3", p), p);
  const auto method = state.range(0) == 0 ? ThetaMethod::perron : ThetaMethod::direct;
  for (auto _ : state) benchmark::DoNotOptimize(theta_sequence(o, p, method));
}
BENCHMARK(BM_ThetaSequence)->Arg(0)->Arg(1);

void BM_RegionMesh(benchmark::State& state) {
  const Params p(0, "1.1", 256);
  const auto n = static_cast<Digit>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(region_mesh(p, n, n));
}
BENCHMARK(BM_RegionMesh)->Arg(6)->Arg(20);

void BM_RunMembership(benchmark::State& state) {
  ExperimentConfig c{Params(0, "sqrt(2)", 256, 30)};
  c.seed_count = 100;
  c.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_membership(c));
}
BENCHMARK(BM_RunMembership)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
