#include <benchmark/benchmark.h>

#include "dirichlet/exact_poly.hpp"

using namespace dirichlet;

static void BM_SemigroupCheck(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  resolve_boundary_convention();
  for (auto _ : state) benchmark::DoNotOptimize(semigroup_identity_check(n));
}
BENCHMARK(BM_SemigroupCheck)->Arg(12)->Arg(360)->Arg(480)->Unit(benchmark::kMicrosecond);

static void BM_SemigroupRange(benchmark::State& state) {
  resolve_boundary_convention();
  for (auto _ : state)
    for (std::uint64_t n = 2; n <= 500; ++n) benchmark::DoNotOptimize(semigroup_identity_check(n));
}
BENCHMARK(BM_SemigroupRange)->Unit(benchmark::kMillisecond);
