#include <benchmark/benchmark.h>

#include "matterwave/fft.hpp"
#include "matterwave/propagator.hpp"
#include "matterwave/pulses.hpp"

using namespace matterwave;

namespace {

const PhysicalParams P{};

Spinor packet(int n) {
    const double z_max = n * 0.15625 * 0.6;
    const double z_min = -n * 0.15625 * 0.4;
    return gaussian(make_grid(n, z_min, z_max), P, 10.0);
}

} // namespace

static void BM_TransformRoundTrip(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Spinor s = packet(n);
    SpectralTransform ft(n);
    for (auto _ : state) {
        ft.forward(s.a);
        ft.inverse(s.a);
        benchmark::DoNotOptimize(s.a.data());
    }
}
BENCHMARK(BM_TransformRoundTrip)->Arg(2048)->Arg(8192);

static void BM_SplitStepSegment(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Spinor s = packet(n);
    const auto pot = PotentialSpec::linear(1e-6);
    for (auto _ : state) {
        Spinor out = evolve_split_step(s, 1.0, pot, 0.05); // 20 steps
        benchmark::DoNotOptimize(out.a.data());
    }
}
BENCHMARK(BM_SplitStepSegment)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

static void BM_FactorizedGravitySegment(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Spinor s = packet(n);
    for (auto _ : state) {
        Spinor out = apply_ug_analytic(s, 100.0, 1e-6);
        benchmark::DoNotOptimize(out.a.data());
    }
}
BENCHMARK(BM_FactorizedGravitySegment)->Arg(2048)->Arg(8192);

static void BM_InstantaneousPulse(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Spinor s = packet(n);
    for (auto _ : state) {
        Spinor out = apply_pulse(s, PulseSpec::beam_splitter());
        benchmark::DoNotOptimize(out.a.data());
    }
}
BENCHMARK(BM_InstantaneousPulse)->Arg(8192);

BENCHMARK_MAIN();
