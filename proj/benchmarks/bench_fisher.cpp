#include <benchmark/benchmark.h>

#include "matterwave/scan.hpp"

using namespace matterwave;

namespace {

ScanConfig small_config(Preset preset) {
    ScanConfig cfg;
    cfg.preset = preset;
    cfg.grid_n = 2048;
    cfg.grid_z_min = -128.0;
    cfg.grid_z_max = 192.0;
    cfg.t_pi = 20.0;
    cfg.workers = 1;
    return cfg;
}

} // namespace

// One scan row: five perturbed sequence runs plus all Fisher columns.
static void BM_ScanRowAllColumns(benchmark::State& state) {
    ScanConfig cfg = small_config(Preset::kc);
    cfg.times = {2.0 * cfg.t_pi};
    for (auto _ : state) {
        FisherTrace tr = scan(cfg);
        benchmark::DoNotOptimize(tr.rows.data());
    }
}
BENCHMARK(BM_ScanRowAllColumns)->Unit(benchmark::kMillisecond);

static void BM_TrapScanRow(benchmark::State& state) {
    ScanConfig cfg = small_config(Preset::trap);
    cfg.times = {2.0 * cfg.t_pi + 10.0};
    for (auto _ : state) {
        FisherTrace tr = scan(cfg);
        benchmark::DoNotOptimize(tr.rows.data());
    }
}
BENCHMARK(BM_TrapScanRow)->Unit(benchmark::kMillisecond);

static void BM_ResolutionPoint(benchmark::State& state) {
    ScanConfig cfg = small_config(Preset::ramsey);
    const std::vector<double> ladder = {0.05};
    for (auto _ : state) {
        ResolutionSweep sweep = resolution_sweep(cfg, ladder);
        benchmark::DoNotOptimize(sweep.rows.data());
    }
}
BENCHMARK(BM_ResolutionPoint)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
