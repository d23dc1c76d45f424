#include <benchmark/benchmark.h>

#include "maxdecouple/optimize.hpp"

namespace {

using namespace maxdecouple;

void BM_ExchangeableLp(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto lp = build_exchangeable_lp(n, Rational(1, n - 1), MomentMode::pairwise_equality);
  for (auto _ : state) benchmark::DoNotOptimize(solve(lp));
}
BENCHMARK(BM_ExchangeableLp)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_FullLp(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto lp = build_full_lp(n, 1.0 / (n - 1), MomentMode::pairwise_equality);
  for (auto _ : state) benchmark::DoNotOptimize(solve(lp));
}
BENCHMARK(BM_FullLp)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(conjecture_sweep(3, static_cast<unsigned>(state.range(0)),
                                              MomentMode::pairwise_equality));
  }
}
BENCHMARK(BM_Sweep)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
