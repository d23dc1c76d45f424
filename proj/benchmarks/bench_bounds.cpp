#include <benchmark/benchmark.h>

#include "maxdecouple/bounds.hpp"
#include "maxdecouple/constructions.hpp"
#include "maxdecouple/continuous.hpp"

namespace {

using namespace maxdecouple;

MarginalVector ramp(std::size_t n) {
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = 0.5 * static_cast<double>(i + 1) / static_cast<double>(n);
  return MarginalVector(std::move(p));
}

void BM_ProbHitIndependent(benchmark::State& state) {
  const auto p = MarginalVector::uniform(static_cast<std::size_t>(state.range(0)), 1.0 / state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prob_hit_independent(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProbHitIndependent)->Range(1 << 10, 1 << 20);

// Dense product joint: 2^n atoms.
void BM_FullReport(benchmark::State& state) {
  const auto j = product(ramp(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(full_report(j, 1e-12));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(j.atoms().size()));
}
BENCHMARK(BM_FullReport)->DenseRange(8, 16, 4)->Unit(benchmark::kMicrosecond);

void BM_GFunction(benchmark::State& state) {
  const auto p = ramp(20);
  for (auto _ : state) benchmark::DoNotOptimize(g_function(p));
}
BENCHMARK(BM_GFunction);

void BM_LayerCake(benchmark::State& state) {
  const auto j = embed(conjectured_extremal(static_cast<unsigned>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(expected_max_layer_cake(j));
}
BENCHMARK(BM_LayerCake)->Arg(8)->Arg(32)->Arg(64);

void BM_Sample(benchmark::State& state) {
  const auto j = conjectured_extremal(5);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(j, seed++, 100'000));
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_Sample)->Unit(benchmark::kMillisecond);

}  // namespace
