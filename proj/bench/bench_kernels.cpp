// OpenMP kernels against their serial references.
//
//   ./build/bench/fishbit_bench --benchmark_counters_tabular=true
//
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "fishbit/analysis/pls_da.hpp"
#include "fishbit/signal/batch.hpp"
#include "fishbit/synth/features.hpp"
#include "fishbit/synth/generator.hpp"

namespace {

using namespace fishbit;

const signal::AccelSeries& recording() {
  // One hour of free-swimming sea bream.
  static const auto series = synth::generate(synth::species_preset("sea_bream"), 3600.0, 100.0, 11).series;
  return series;
}

void BM_ProcessSeriesSerial(benchmark::State& state) {
  const auto cfg = signal::EstimatorConfig::exact();
  for (auto _ : state) {
    benchmark::DoNotOptimize(signal::process_series_serial(recording(), cfg, signal::Mode::Exact));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(recording().size()));
}

void BM_ProcessSeriesParallel(benchmark::State& state) {
  const auto cfg = signal::EstimatorConfig::exact();
  for (auto _ : state) {
    benchmark::DoNotOptimize(signal::process_series(recording(), cfg, signal::Mode::Exact));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(recording().size()));
}

void BM_LooQ2Serial(benchmark::State& state) {
  const auto data = synth::aerobic_anaerobic_features(static_cast<std::size_t>(state.range(0)), 2.4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(analysis::loo_q2_serial(data.x, data.labels));
}

void BM_LooQ2Parallel(benchmark::State& state) {
  const auto data = synth::aerobic_anaerobic_features(static_cast<std::size_t>(state.range(0)), 2.4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(analysis::loo_q2(data.x, data.labels));
}

}  // namespace

BENCHMARK(BM_ProcessSeriesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProcessSeriesParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LooQ2Serial)->Arg(30)->Arg(200)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LooQ2Parallel)->Arg(30)->Arg(200)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
