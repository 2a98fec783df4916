#include <benchmark/benchmark.h>

#include "dirichlet/inversion.hpp"

using namespace dirichlet;

static void BM_FEval(benchmark::State& state) {
  const auto ctx = make_context(MultiplicativeSpec::all_ones(), 1.4);
  const Complex s(ctx.sigma() + ctx.gamma() * 0.1 + 0.1, 0.5), w(0.06, 0.08);
  for (auto _ : state) benchmark::DoNotOptimize(f_eval(ctx, s, w));
}
BENCHMARK(BM_FEval)->Unit(benchmark::kMicrosecond);

static void BM_FEvalChi4(benchmark::State& state) {
  const auto ctx = make_context(MultiplicativeSpec::chi4(), 1.2);
  const Complex s(ctx.sigma() + ctx.gamma() * 0.1 + 0.1, 0.5), w(0.06, 0.08);
  for (auto _ : state) benchmark::DoNotOptimize(f_eval(ctx, s, w));
}
BENCHMARK(BM_FEvalChi4)->Unit(benchmark::kMicrosecond);

static void BM_NewtonOracle(benchmark::State& state) {
  const auto ctx = make_context(MultiplicativeSpec::all_ones(), 1.4);
  const Complex s(ctx.sigma() + ctx.gamma() * 0.1 + 0.1, 0.5), w(0.06, 0.08);
  for (auto _ : state) benchmark::DoNotOptimize(newton_oracle(ctx, s, w));
}
BENCHMARK(BM_NewtonOracle)->Unit(benchmark::kMicrosecond);

static void BM_LEvalDirect(benchmark::State& state) {
  const auto ctx = make_context(MultiplicativeSpec::all_ones(), 1.4);
  for (auto _ : state) benchmark::DoNotOptimize(L_eval(ctx, Complex(3.0, 1.0), Summation::direct));
}
BENCHMARK(BM_LEvalDirect)->Unit(benchmark::kMillisecond);
