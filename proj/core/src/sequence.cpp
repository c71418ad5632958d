#include "matterwave/sequence.hpp"

#include <cmath>
#include <stdexcept>

namespace matterwave {

double SequenceSpec::total_time() const {
    double t = 0.0;
    for (const auto& ev : events) {
        std::visit(
            [&t](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, FreeEvent> || std::is_same_v<T, TrapEvent> ||
                              std::is_same_v<T, FinitePulseEvent>) {
                    t += e.duration;
                }
            },
            ev);
    }
    return t;
}

KcTiming kc_timing(double t_pi, double t) {
    if (t < 0.0) throw std::invalid_argument("kc_timing: negative time");
    if (t <= t_pi) return {t, 0.0};
    return {t_pi, t - t_pi};
}

SequenceSpec build_kc(double t_pi, double t, double phi1, double phi2, double phi3) {
    const KcTiming w = kc_timing(t_pi, t);
    SequenceSpec seq;
    seq.events.push_back(PulseEvent{PulseSpec::beam_splitter(phi1)});
    if (w.t1 > 0.0) seq.events.push_back(FreeEvent{w.t1, true});
    if (t > t_pi) {
        seq.events.push_back(PulseEvent{PulseSpec::mirror(phi2)});
        if (w.t2 > 0.0) seq.events.push_back(FreeEvent{w.t2, true});
    }
    seq.events.push_back(PulseEvent{PulseSpec::beam_splitter(phi3)});
    return seq;
}

SequenceSpec build_ramsey(double t, double phi1, double phi3) {
    if (t < 0.0) throw std::invalid_argument("build_ramsey: negative time");
    SequenceSpec seq;
    seq.events.push_back(PulseEvent{PulseSpec::beam_splitter(phi1)});
    if (t > 0.0) seq.events.push_back(FreeEvent{t, true});
    seq.events.push_back(PulseEvent{PulseSpec::beam_splitter(phi3)});
    return seq;
}

SequenceSpec build_trap_scheme(double t_pi, double omega, double t,
                               const PhysicalParams& params) {
    if (omega <= 0.0) throw std::invalid_argument("build_trap_scheme: omega must be positive");
    if (t <= 2.0 * t_pi) return build_kc(t_pi, t);

    const double z0 = params.hbar * params.k0 * t_pi / params.mass; // output centre of mass
    SequenceSpec seq;
    seq.events.push_back(PulseEvent{PulseSpec::beam_splitter(0.0)});
    seq.events.push_back(FreeEvent{t_pi, true});
    seq.events.push_back(PulseEvent{PulseSpec::mirror(0.0)});
    seq.events.push_back(FreeEvent{t_pi, true});
    seq.events.push_back(ReuniteEvent{});
    seq.events.push_back(TrapEvent{omega, z0, t - 2.0 * t_pi, false});
    seq.events.push_back(FinalBsEvent{});
    return seq;
}

SequenceSpec with_finite_pulses(const SequenceSpec& seq, double delta_t) {
    if (delta_t <= 0.0) throw std::invalid_argument("with_finite_pulses: delta_t must be positive");
    SequenceSpec out;
    out.events.reserve(seq.events.size());
    const double omega_rabi = (std::numbers::pi / 2.0) / delta_t;
    for (const auto& ev : seq.events) {
        if (const auto* p = std::get_if<PulseEvent>(&ev)) {
            // Fixed Rabi frequency: duration scales with the pulse area.
            const double duration = p->pulse.theta / omega_rabi;
            out.events.push_back(FinitePulseEvent{p->pulse.theta, p->pulse.phi, duration, true});
        } else {
            out.events.push_back(ev);
        }
    }
    return out;
}

Spinor run_sequence(const SequenceSpec& seq, double g, const Spinor& initial,
                    const EngineConfig& engine, RunDiagnostics* diag) {
    Spinor state = initial;
    for (const auto& ev : seq.events) {
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, FreeEvent>) {
                    const double g_eff = e.gravity_on ? g : 0.0;
                    if (engine.free_method == EngineConfig::FreeMethod::analytic) {
                        state = apply_ug_analytic(std::move(state), e.duration, g_eff, diag);
                    } else {
                        const auto pot = e.gravity_on ? PotentialSpec::linear(g)
                                                      : PotentialSpec::free_space();
                        state = evolve_split_step(std::move(state), e.duration, pot,
                                                  engine.dt_free, diag);
                    }
                } else if constexpr (std::is_same_v<T, PulseEvent>) {
                    state = apply_pulse(state, e.pulse);
                } else if constexpr (std::is_same_v<T, FinitePulseEvent>) {
                    FinitePulseParams p;
                    p.pulse_area = e.pulse_area;
                    p.phi = e.phi;
                    p.duration = e.duration;
                    p.g = g;
                    p.gravity_enabled = e.gravity_on;
                    const double dt = e.duration / engine.pulse_substeps;
                    state = evolve_hbs(std::move(state), p, dt, diag);
                } else if constexpr (std::is_same_v<T, TrapEvent>) {
                    const auto pot = PotentialSpec::harmonic(e.omega, e.z0, e.gravity_on, g);
                    const double dt = engine.trap_phase_per_step / e.omega;
                    state = evolve_split_step(std::move(state), e.duration, pot, dt, diag);
                } else if constexpr (std::is_same_v<T, ReuniteEvent>) {
                    state = apply_momentum_reunite(state);
                } else if constexpr (std::is_same_v<T, FinalBsEvent>) {
                    state = apply_final_bs(state);
                }
            },
            ev);
    }
    if (diag) diag->record_norm_drift(std::abs(norm_total(state) - 1.0));
    return state;
}

} // namespace matterwave
