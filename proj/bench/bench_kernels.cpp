// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "ccount/harness.hpp"
#include "ccount/sketch.hpp"

namespace {

void BM_FromVectorSerial(benchmark::State& state) {
  const auto a = ccount::generate_zipf(static_cast<std::uint64_t>(state.range(0)), 1.0);
  const ccount::SketchConfig cfg{0.99, 64, 7, a.size()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccount::from_vector_serial(cfg, a));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 64);
}

void BM_FromVectorParallel(benchmark::State& state) {
  const auto a = ccount::generate_zipf(static_cast<std::uint64_t>(state.range(0)), 1.0);
  const ccount::SketchConfig cfg{0.99, 64, 7, a.size()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccount::from_vector(cfg, a));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 64);
}

ccount::McConfig mc_config(std::size_t trials) {
  ccount::McConfig cfg;
  cfg.alphas = {0.99};
  cfg.ks = {100};
  cfg.estimators = {ccount::EstimatorKind::kOptimalPower};
  cfg.trials = trials;
  cfg.data = ccount::generate_zipf(1 << 16, 1.0);
  cfg.record_timing = false;
  return cfg;
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto cfg = mc_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccount::run_monte_carlo_serial(cfg));
  }
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const auto cfg = mc_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccount::run_monte_carlo(cfg));
  }
}

void BM_StreamUpdate(benchmark::State& state) {
  ccount::Sketch s(ccount::SketchConfig{0.99, static_cast<std::uint64_t>(state.range(0)), 3, 1 << 20});
  std::uint64_t i = 1;
  for (auto _ : state) {
    s.update(i, 1.0);
    i = i % (1 << 20) + 1;
  }
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK(BM_FromVectorSerial)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FromVectorParallel)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StreamUpdate)->Arg(10)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
