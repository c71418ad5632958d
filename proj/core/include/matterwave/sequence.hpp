#pragma once

#include <numbers>
#include <variant>
#include <vector>

#include "matterwave/propagator.hpp"
#include "matterwave/pulses.hpp"

namespace matterwave {

struct FreeEvent {
    double duration = 0.0;
    bool gravity_on = true;
};

struct PulseEvent {
    PulseSpec pulse;
};

struct FinitePulseEvent {
    double pulse_area = 0.0;
    double phi = 0.0;
    double duration = 0.0;
    bool gravity_on = true;
};

struct TrapEvent {
    double omega = 0.0;
    double z0 = 0.0;
    double duration = 0.0;
    bool gravity_on = false;
};

struct ReuniteEvent {};
struct FinalBsEvent {};

using Event =
    std::variant<FreeEvent, PulseEvent, FinitePulseEvent, TrapEvent, ReuniteEvent, FinalBsEvent>;

struct SequenceSpec {
    std::vector<Event> events;
    double total_time() const;
};

// Propagation engine choices. Free-fall segments default to the exact
// factorised propagator; trap segments and finite pulses always run through
// the split-step engine.
struct EngineConfig {
    enum class FreeMethod { analytic, split_step };

    FreeMethod free_method = FreeMethod::analytic;
    double dt_free = 0.05;             // split-step free/gravity segments
    double trap_phase_per_step = 0.01; // dt = trap_phase_per_step / omega
    int pulse_substeps = 200;          // dt = duration / pulse_substeps
};

// Interrogation-time split rule: T1 = t, T2 = 0 up to t_pi, afterwards the
// mirror sits at t_pi and T2 = t - t_pi.
struct KcTiming {
    double t1 = 0.0;
    double t2 = 0.0;
};
KcTiming kc_timing(double t_pi, double t);

// pi/2 -- free(T1) -- pi (once t exceeds t_pi) -- free(T2) -- pi/2, with the
// closing pulse applied instantaneously before measurement.
SequenceSpec build_kc(double t_pi, double t, double phi1 = 0.0, double phi2 = 0.0,
                      double phi3 = std::numbers::pi / 2.0);

// Mirrorless pair of pi/2 pulses separated by free evolution.
SequenceSpec build_ramsey(double t, double phi1 = 0.0,
                          double phi3 = std::numbers::pi / 2.0);

// KC sequence without its closing pi/2 up to 2 t_pi, then momentum reunite,
// harmonic trap centred on the output centre of mass with gravity disabled,
// and a final internal beam splitter before measurement. For t <= 2 t_pi
// this reduces to build_kc.
SequenceSpec build_trap_scheme(double t_pi, double omega, double t,
                               const PhysicalParams& params);

// Replace instantaneous pulses by finite ones at fixed Rabi frequency
// (pi/2)/delta_t: a splitter lasts delta_t, the mirror 2*delta_t.
SequenceSpec with_finite_pulses(const SequenceSpec& seq, double delta_t);

Spinor run_sequence(const SequenceSpec& seq, double g, const Spinor& initial,
                    const EngineConfig& engine = {}, RunDiagnostics* diag = nullptr);

} // namespace matterwave
