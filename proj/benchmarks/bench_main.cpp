#include <benchmark/benchmark.h>

#include "lcoal/binomial.hpp"
#include "lcoal/measure.hpp"
#include "lcoal/rates.hpp"
#include "lcoal/random.hpp"
#include "lcoal/simulate.hpp"

namespace {

void BM_Philox(benchmark::State& state) {
  lcoal::RandomStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(rng());
}
BENCHMARK(BM_Philox);

void BM_Binomial(benchmark::State& state) {
  lcoal::RandomStream rng(2);
  const std::int64_t trials = state.range(0);
  const double p = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(lcoal::binomial(rng, trials, p));
}
BENCHMARK(BM_Binomial)->Arg(10)->Arg(1000)->Arg(100000000);

void BM_EpochSampler(benchmark::State& state) {
  lcoal::RandomStream rng(3);
  const auto measure = lcoal::CharacteristicMeasure::uniform();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lcoal::simulate_coalescent_epochs(measure, state.range(0), rng));
  }
}
BENCHMARK(BM_EpochSampler)->Arg(100)->Arg(1000000)->Arg(100000000);

void BM_CoupledSampler(benchmark::State& state) {
  lcoal::RandomStream rng(4);
  const auto measure = lcoal::CharacteristicMeasure::log_pareto(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(lcoal::simulate_coupled(measure, state.range(0), rng));
}
BENCHMARK(BM_CoupledSampler)->Arg(1000)->Arg(100000000);

void BM_RateTableClosedForm(benchmark::State& state) {
  const auto measure = lcoal::CharacteristicMeasure::beta(1.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(lcoal::RateTable::build(measure, state.range(0)));
}
BENCHMARK(BM_RateTableClosedForm)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_RateTableQuadrature(benchmark::State& state) {
  const auto measure = lcoal::CharacteristicMeasure::log_pareto(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(lcoal::RateTable::build(measure, state.range(0)));
}
BENCHMARK(BM_RateTableQuadrature)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
