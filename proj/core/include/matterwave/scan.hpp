#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "matterwave/fisher.hpp"
#include "matterwave/sequence.hpp"

namespace matterwave {

enum class Preset { kc, kc_chirped, ramsey, trap };

const char* preset_name(Preset p);
std::optional<Preset> preset_from_name(std::string_view name);

struct ScanConfig {
    Preset preset = Preset::kc;
    PhysicalParams physical;

    int grid_n = 8192;
    double grid_z_min = -512.0;
    double grid_z_max = 768.0;

    bool chirped_state = false; // forced on by Preset::kc_chirped
    double sigma = 10.0;
    double state_z_center = 0.0;
    double state_p_center = 0.0;

    double t_pi = 100.0;
    std::vector<double> times;

    bool want_fq_numeric = true;
    bool want_fq_analytic = true;
    std::vector<Basis> bases = {Basis::population, Basis::position, Basis::momentum};

    double dg = 0.0; // 0: automatic from the accrued-phase target
    double floor = kDefaultProbabilityFloor;

    double trap_omega = 0.0; // 0: 3 pi / (2 t_pi)
    std::optional<double> finite_pulse_dt;

    EngineConfig engine;
    unsigned workers = 0; // 0: MATTERWAVE_WORKERS or hardware concurrency

    bool uses_chirped_state() const {
        return chirped_state || preset == Preset::kc_chirped;
    }
    double effective_trap_omega() const {
        return trap_omega > 0.0 ? trap_omega : 3.0 * std::numbers::pi / (2.0 * t_pi);
    }
};

struct TraceRow {
    double t = 0.0;
    std::optional<double> fq_numeric;  // units k0^2 t_pi^4
    std::optional<double> fq_analytic;
    std::optional<double> fc_pop;
    std::optional<double> fc_pos;
    std::optional<double> fc_mom;
    double dg_used = 0.0;
    double convergence_error = 0.0; // worst over the row's estimates
    double floor_sensitivity = 0.0;
    double edge_fraction = 0.0;     // worst over the row's propagations
    bool valid = true;
    std::string diagnostic;
};

struct FisherTrace {
    std::vector<TraceRow> rows;

    std::string preset;
    PhysicalParams physical;
    double t_pi = 0.0;
    double sigma = 0.0;
    double unit_scale = 0.0; // k0^2 t_pi^4
    int grid_n = 0;
    double grid_z_min = 0.0;
    double grid_z_max = 0.0;
    double floor = kDefaultProbabilityFloor;

    bool all_valid() const;
};

std::vector<double> linspace(double a, double b, int n);

// Evaluate the requested Fisher columns at every scan time. Rows are
// independent and run in parallel; results are merged by index so worker
// count never changes the table.
FisherTrace scan(const ScanConfig& cfg);

// Construct the configured initial state (shared by scan and the CLI).
Spinor make_initial_state(const ScanConfig& cfg);

struct ResolutionRow {
    double sigma_p = 0.0;
    double fc_mom = 0.0; // units k0^2 t_pi^4
    double convergence_error = 0.0;
    bool valid = true;
};

struct ResolutionSweep {
    std::vector<ResolutionRow> rows;
    std::string preset;
    double t = 0.0;
    double t_pi = 0.0;
    double unit_scale = 0.0;
};

// Momentum CFI at t = 2 t_pi after blurring the per-state momentum
// distributions with a Gaussian of width sigma_p.
ResolutionSweep resolution_sweep(const ScanConfig& cfg,
                                 const std::vector<double>& sigma_p_values);

struct PulseDurationRow {
    double delta_t = 0.0; // 0 marks the instantaneous reference row
    std::optional<double> fq;
    std::optional<double> fc_pop;
    std::optional<double> fc_pos;
    std::optional<double> fc_mom;
    double sequence_time = 0.0;
    bool valid = true;
};

struct PulseDurationSweep {
    std::vector<PulseDurationRow> rows; // first row: instantaneous reference
    double t_pi = 0.0;
    double unit_scale = 0.0;
};

// Full interferometer at the symmetric point with finite-duration pulses of
// the given lengths, against the instantaneous-pulse reference.
PulseDurationSweep pulse_duration_sweep(const ScanConfig& cfg,
                                        const std::vector<double>& delta_t_values);

} // namespace matterwave
