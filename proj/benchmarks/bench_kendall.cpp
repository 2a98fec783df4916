#include <benchmark/benchmark.h>

#include "dirichlet/kendall.hpp"

using namespace dirichlet;

namespace {
const SubordinatorModel& model() {
  static const auto m = build_model(make_context(MultiplicativeSpec::all_ones(), 2.0), 2.0);
  return m;
}
}  // namespace

static void BM_SamplePath(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    CounterRng rng(1, 0, i++);
    benchmark::DoNotOptimize(sample_path(model(), t, rng));
  }
}
BENCHMARK(BM_SamplePath)->Arg(1)->Arg(14);

static void BM_PassageLaw(benchmark::State& state) {
  SimulationOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(passage_law_check(model(), 1.0, 0.5, 100000, 1, 10, opts));
}
BENCHMARK(BM_PassageLaw)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
