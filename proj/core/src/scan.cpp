#include "matterwave/scan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "matterwave/parallel.hpp"

namespace matterwave {

const char* preset_name(Preset p) {
    switch (p) {
        case Preset::kc: return "kc";
        case Preset::kc_chirped: return "kc_chirped";
        case Preset::ramsey: return "ramsey";
        case Preset::trap: return "trap";
    }
    return "?";
}

std::optional<Preset> preset_from_name(std::string_view name) {
    if (name == "kc") return Preset::kc;
    if (name == "kc_chirped") return Preset::kc_chirped;
    if (name == "ramsey") return Preset::ramsey;
    if (name == "trap") return Preset::trap;
    return std::nullopt;
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 1) throw std::invalid_argument("linspace: need at least one point");
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = a;
        return out;
    }
    const double step = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) out[i] = a + i * step;
    out.back() = b;
    return out;
}

bool FisherTrace::all_valid() const {
    return std::all_of(rows.begin(), rows.end(), [](const TraceRow& r) { return r.valid; });
}

Spinor make_initial_state(const ScanConfig& cfg) {
    cfg.physical.validate();
    const Grid grid = make_grid(cfg.grid_n, cfg.grid_z_min, cfg.grid_z_max);
    if (cfg.uses_chirped_state()) return chirped_gaussian(grid, cfg.physical, cfg.sigma);
    return gaussian(grid, cfg.physical, cfg.sigma, cfg.state_z_center, cfg.state_p_center);
}

namespace {

constexpr std::array<double, 5> kGmul = {-1.0, -0.5, 0.0, 0.5, 1.0};
constexpr std::size_t kCenter = 2;

struct RunSet {
    std::array<Spinor, 5> states;
    double dg = 0.0;
    double edge = 0.0;
    bool valid = true;
    std::string reason;
};

SequenceSpec sequence_for(const ScanConfig& cfg, double t) {
    SequenceSpec seq;
    switch (cfg.preset) {
        case Preset::kc:
        case Preset::kc_chirped: seq = build_kc(cfg.t_pi, t); break;
        case Preset::ramsey: seq = build_ramsey(t); break;
        case Preset::trap:
            seq = build_trap_scheme(cfg.t_pi, cfg.effective_trap_omega(), t, cfg.physical);
            break;
    }
    if (cfg.finite_pulse_dt) seq = with_finite_pulses(seq, *cfg.finite_pulse_dt);
    return seq;
}

// Interrogation window the acceleration actually acts over; sets the
// finite-difference step through the accrued-phase target.
double sensitive_time(const ScanConfig& cfg, double t) {
    if (cfg.preset == Preset::trap) return std::min(t, 2.0 * cfg.t_pi);
    return t;
}

double row_dg(const ScanConfig& cfg, double t) {
    if (cfg.dg > 0.0) return cfg.dg;
    return dg_for_phase(cfg.physical.k0, sensitive_time(cfg, t), cfg.t_pi);
}

// Shared prefix for the trap preset: everything up to and including the
// momentum reunite is independent of the sample time, so it is propagated
// once per perturbed acceleration.
struct TrapPrefix {
    std::array<Spinor, 5> states;
    std::array<RunDiagnostics, 5> diags;
    double dg = 0.0;
};

TrapPrefix make_trap_prefix(const ScanConfig& cfg, const Spinor& initial) {
    TrapPrefix pre;
    pre.dg = row_dg(cfg, 2.0 * cfg.t_pi);
    SequenceSpec seq;
    seq.events.push_back(PulseEvent{PulseSpec::beam_splitter(0.0)});
    seq.events.push_back(FreeEvent{cfg.t_pi, true});
    seq.events.push_back(PulseEvent{PulseSpec::mirror(0.0)});
    seq.events.push_back(FreeEvent{cfg.t_pi, true});
    seq.events.push_back(ReuniteEvent{});
    parallel_for_index(
        kGmul.size(),
        [&](std::size_t i) {
            const double g = cfg.physical.g_offset + kGmul[i] * pre.dg;
            pre.states[i] = run_sequence(seq, g, initial, cfg.engine, &pre.diags[i]);
        },
        cfg.workers);
    return pre;
}

RunSet row_states(const ScanConfig& cfg, const Spinor& initial, const TrapPrefix* prefix,
                  double t) {
    RunSet rs;
    rs.dg = prefix ? prefix->dg : row_dg(cfg, t);

    const bool use_prefix = prefix && cfg.preset == Preset::trap && t > 2.0 * cfg.t_pi &&
                            !cfg.finite_pulse_dt;
    for (std::size_t i = 0; i < kGmul.size(); ++i) {
        const double g = cfg.physical.g_offset + kGmul[i] * rs.dg;
        RunDiagnostics diag;
        if (use_prefix) {
            diag = prefix->diags[i];
            SequenceSpec tail;
            tail.events.push_back(TrapEvent{cfg.effective_trap_omega(),
                                            cfg.physical.hbar * cfg.physical.k0 * cfg.t_pi /
                                                cfg.physical.mass,
                                            t - 2.0 * cfg.t_pi, false});
            tail.events.push_back(FinalBsEvent{});
            rs.states[i] = run_sequence(tail, g, prefix->states[i], cfg.engine, &diag);
        } else {
            rs.states[i] = run_sequence(sequence_for(cfg, t), g, initial, cfg.engine, &diag);
        }
        rs.edge = std::max(rs.edge, diag.max_edge_fraction);
        if (!diag.valid && rs.valid) {
            rs.valid = false;
            rs.reason = diag.reason;
        }
    }
    return rs;
}

struct ColumnEstimate {
    double value = 0.0;
    double convergence_error = 0.0;
    double floor_sensitivity = 0.0;
};

ColumnEstimate qfi_column(const RunSet& rs) {
    ColumnEstimate c;
    const double coarse = qfi_from_states(rs.states[0], rs.states[kCenter], rs.states[4], rs.dg);
    const double fine =
        qfi_from_states(rs.states[1], rs.states[kCenter], rs.states[3], 0.5 * rs.dg);
    c.value = fine;
    c.convergence_error =
        fine != 0.0 ? std::abs(coarse - fine) / std::abs(fine) : std::abs(coarse - fine);
    return c;
}

ColumnEstimate cfi_column(const RunSet& rs, Basis basis, double floor) {
    const bool per_state = basis != Basis::population;
    std::array<Distribution, 5> d;
    for (std::size_t i = 0; i < rs.states.size(); ++i) {
        d[i] = measure_distribution(rs.states[i], basis, per_state);
    }
    ColumnEstimate c;
    const double coarse = cfi_from_distributions(d[0], d[kCenter], d[4], rs.dg, floor);
    const double fine = cfi_from_distributions(d[1], d[kCenter], d[3], 0.5 * rs.dg, floor);
    const double fine10 = cfi_from_distributions(d[1], d[kCenter], d[3], 0.5 * rs.dg, 10.0 * floor);
    c.value = fine;
    c.convergence_error =
        fine != 0.0 ? std::abs(coarse - fine) / std::abs(fine) : std::abs(coarse - fine);
    c.floor_sensitivity = fine != 0.0 ? std::abs(fine10 - fine) / std::abs(fine) : 0.0;
    return c;
}

double analytic_qfi_for(const ScanConfig& cfg, const Moments& m0, double t) {
    KcTiming w{0.0, 0.0};
    switch (cfg.preset) {
        case Preset::kc:
        case Preset::kc_chirped: w = kc_timing(cfg.t_pi, t); break;
        case Preset::ramsey: w = {t, 0.0}; break;
        case Preset::trap: w = kc_timing(cfg.t_pi, std::min(t, 2.0 * cfg.t_pi)); break;
    }
    return qfi_kc_analytic(w.t1, w.t2, m0, cfg.physical);
}

} // namespace

FisherTrace scan(const ScanConfig& cfg) {
    if (cfg.times.empty()) throw std::invalid_argument("scan: times must be nonempty");
    cfg.physical.validate();

    const Spinor initial = make_initial_state(cfg);
    const Moments m0 = moments(initial);
    const double unit = fq_semiclassical(cfg.physical.k0, cfg.t_pi);

    std::optional<TrapPrefix> prefix;
    const bool any_tail = cfg.preset == Preset::trap && !cfg.finite_pulse_dt &&
                          std::any_of(cfg.times.begin(), cfg.times.end(),
                                      [&](double t) { return t > 2.0 * cfg.t_pi; });
    if (any_tail) prefix = make_trap_prefix(cfg, initial);

    FisherTrace trace;
    trace.rows.resize(cfg.times.size());
    trace.preset = preset_name(cfg.preset);
    trace.physical = cfg.physical;
    trace.t_pi = cfg.t_pi;
    trace.sigma = cfg.sigma;
    trace.unit_scale = unit;
    trace.grid_n = cfg.grid_n;
    trace.grid_z_min = cfg.grid_z_min;
    trace.grid_z_max = cfg.grid_z_max;
    trace.floor = cfg.floor;

    const auto wants = [&](Basis b) {
        return std::find(cfg.bases.begin(), cfg.bases.end(), b) != cfg.bases.end();
    };
    const bool want_pop = wants(Basis::population);
    const bool want_pos = wants(Basis::position);
    const bool want_mom = wants(Basis::momentum);

    parallel_for_index(
        cfg.times.size(),
        [&](std::size_t i) {
            TraceRow row;
            row.t = cfg.times[i];
            const RunSet rs =
                row_states(cfg, initial, prefix ? &*prefix : nullptr, cfg.times[i]);
            row.dg_used = rs.dg;
            row.edge_fraction = rs.edge;
            row.valid = rs.valid;
            row.diagnostic = rs.reason;

            double conv = 0.0, floor_sens = 0.0;
            if (cfg.want_fq_numeric) {
                const auto c = qfi_column(rs);
                row.fq_numeric = c.value / unit;
                conv = std::max(conv, c.convergence_error);
            }
            if (cfg.want_fq_analytic) {
                row.fq_analytic = analytic_qfi_for(cfg, m0, cfg.times[i]) / unit;
            }
            if (want_pop) {
                const auto c = cfi_column(rs, Basis::population, cfg.floor);
                row.fc_pop = c.value / unit;
                conv = std::max(conv, c.convergence_error);
                floor_sens = std::max(floor_sens, c.floor_sensitivity);
            }
            if (want_pos) {
                const auto c = cfi_column(rs, Basis::position, cfg.floor);
                row.fc_pos = c.value / unit;
                conv = std::max(conv, c.convergence_error);
                floor_sens = std::max(floor_sens, c.floor_sensitivity);
            }
            if (want_mom) {
                const auto c = cfi_column(rs, Basis::momentum, cfg.floor);
                row.fc_mom = c.value / unit;
                conv = std::max(conv, c.convergence_error);
                floor_sens = std::max(floor_sens, c.floor_sensitivity);
            }
            row.convergence_error = conv;
            row.floor_sensitivity = floor_sens;
            trace.rows[i] = std::move(row);
        },
        cfg.workers);

    return trace;
}

ResolutionSweep resolution_sweep(const ScanConfig& cfg,
                                 const std::vector<double>& sigma_p_values) {
    if (cfg.preset != Preset::kc && cfg.preset != Preset::ramsey)
        throw std::invalid_argument("resolution_sweep: kc or ramsey preset required");
    if (sigma_p_values.empty())
        throw std::invalid_argument("resolution_sweep: no sigma_p values");

    const Spinor initial = make_initial_state(cfg);
    const double t = 2.0 * cfg.t_pi;
    const RunSet rs = row_states(cfg, initial, nullptr, t);

    std::array<Distribution, 5> d;
    for (std::size_t i = 0; i < rs.states.size(); ++i) {
        d[i] = measure_distribution(rs.states[i], Basis::momentum, true);
    }

    ResolutionSweep sweep;
    sweep.rows.resize(sigma_p_values.size());
    sweep.preset = preset_name(cfg.preset);
    sweep.t = t;
    sweep.t_pi = cfg.t_pi;
    sweep.unit_scale = fq_semiclassical(cfg.physical.k0, cfg.t_pi);

    parallel_for_index(
        sigma_p_values.size(),
        [&](std::size_t i) {
            const double sp = sigma_p_values[i] * cfg.physical.hbar * cfg.physical.k0;
            std::array<Distribution, 5> blurred;
            for (std::size_t j = 0; j < d.size(); ++j) {
                blurred[j] = convolve_resolution(d[j], sp);
            }
            ResolutionRow row;
            row.sigma_p = sigma_p_values[i];
            const double coarse = cfi_from_distributions(blurred[0], blurred[kCenter],
                                                         blurred[4], rs.dg, cfg.floor);
            const double fine = cfi_from_distributions(blurred[1], blurred[kCenter], blurred[3],
                                                       0.5 * rs.dg, cfg.floor);
            row.fc_mom = fine / sweep.unit_scale;
            row.convergence_error =
                fine != 0.0 ? std::abs(coarse - fine) / std::abs(fine) : 0.0;
            row.valid = rs.valid;
            sweep.rows[i] = row;
        },
        cfg.workers);

    return sweep;
}

PulseDurationSweep pulse_duration_sweep(const ScanConfig& cfg,
                                        const std::vector<double>& delta_t_values) {
    PulseDurationSweep sweep;
    sweep.t_pi = cfg.t_pi;
    sweep.unit_scale = fq_semiclassical(cfg.physical.k0, cfg.t_pi);

    const Spinor initial = make_initial_state(cfg);
    const double t = 2.0 * cfg.t_pi;

    auto evaluate = [&](std::optional<double> delta_t) {
        ScanConfig local = cfg;
        local.preset = cfg.uses_chirped_state() ? Preset::kc_chirped : Preset::kc;
        local.finite_pulse_dt = delta_t;
        const RunSet rs = row_states(local, initial, nullptr, t);
        PulseDurationRow row;
        row.delta_t = delta_t.value_or(0.0);
        row.sequence_time = t + (delta_t ? 4.0 * *delta_t : 0.0);
        row.valid = rs.valid;
        row.fq = qfi_column(rs).value / sweep.unit_scale;
        row.fc_pop = cfi_column(rs, Basis::population, cfg.floor).value / sweep.unit_scale;
        row.fc_pos = cfi_column(rs, Basis::position, cfg.floor).value / sweep.unit_scale;
        row.fc_mom = cfi_column(rs, Basis::momentum, cfg.floor).value / sweep.unit_scale;
        return row;
    };

    sweep.rows.resize(delta_t_values.size() + 1);
    sweep.rows[0] = evaluate(std::nullopt);
    parallel_for_index(
        delta_t_values.size(),
        [&](std::size_t i) { sweep.rows[i + 1] = evaluate(delta_t_values[i]); },
        cfg.workers);

    return sweep;
}

} // namespace matterwave
