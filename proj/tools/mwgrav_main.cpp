// mwgrav: matterwave gravimetry sensitivity scans.
//
// Subcommands map one-to-one onto the library's experiment presets; every
// run is described by a JSON config (see docs/config.md), with flags
// overriding scalar fields. Outputs are written atomically.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "matterwave/run_config.hpp"
#include "matterwave/sequence.hpp"

namespace mw = matterwave;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
    std::string config_path;
    std::optional<double> t_pi, sigma, start, stop, dg, floor, omega, delta_t;
    std::optional<double> z_min, z_max;
    std::optional<int> points, n_points;
    std::optional<std::string> output, format, state_kind;
};

void add_common_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--output", o.output, "output path");
    cmd->add_option("--format", o.format, "csv or json");
    cmd->add_option("--t-pi", o.t_pi, "mirror-pulse time t_pi");
    cmd->add_option("--sigma", o.sigma, "initial wavepacket width");
    cmd->add_option("--state", o.state_kind, "gaussian or chirped");
    cmd->add_option("--points", o.points, "number of scan points");
    cmd->add_option("--start", o.start, "scan start time");
    cmd->add_option("--stop", o.stop, "scan stop time");
    cmd->add_option("--n-points", o.n_points, "grid size (power of two)");
    cmd->add_option("--z-min", o.z_min, "grid lower edge");
    cmd->add_option("--z-max", o.z_max, "grid upper edge");
    cmd->add_option("--dg", o.dg, "finite-difference acceleration step (0: auto)");
    cmd->add_option("--floor", o.floor, "probability floor for CFI quadrature");
    cmd->add_option("--omega", o.omega, "trap frequency (trap preset)");
    cmd->add_option("--delta-t", o.delta_t, "finite pulse duration (switches pulses to finite)");
}

mw::RunConfig build_config(const Overrides& o, mw::Preset preset) {
    mw::RunConfig cfg = o.config_path.empty() ? mw::default_run_config(preset)
                                              : mw::load_run_config(o.config_path);
    cfg.scan.preset = preset; // the subcommand names the experiment

    if (o.t_pi) cfg.scan.t_pi = *o.t_pi;
    if (o.sigma) cfg.scan.sigma = *o.sigma;
    if (o.state_kind) {
        if (*o.state_kind == "chirped") {
            cfg.scan.chirped_state = true;
        } else if (*o.state_kind == "gaussian") {
            cfg.scan.chirped_state = false;
        } else {
            throw mw::ConfigError("--state must be 'gaussian' or 'chirped'");
        }
    }
    if (o.points) cfg.scan_points = *o.points;
    if (o.start) cfg.scan_start = *o.start;
    if (o.stop) cfg.scan_stop = *o.stop;
    if (o.n_points) cfg.scan.grid_n = *o.n_points;
    if (o.z_min) cfg.scan.grid_z_min = *o.z_min;
    if (o.z_max) cfg.scan.grid_z_max = *o.z_max;
    if (o.dg) cfg.scan.dg = *o.dg;
    if (o.floor) cfg.scan.floor = *o.floor;
    if (o.omega) cfg.scan.trap_omega = *o.omega;
    if (o.delta_t) cfg.scan.finite_pulse_dt = *o.delta_t;
    if (o.output) cfg.output_path = *o.output;
    if (o.format) {
        const auto f = mw::format_from_name(*o.format);
        if (!f) throw mw::ConfigError("--format must be 'csv' or 'json'");
        cfg.format = *f;
    }
    mw::finalize_times(cfg);
    return cfg;
}

void report_numerical_flag(const std::string& what) {
    std::cerr << "{\"error\": \"numerical-validity\", \"detail\": \"" << what
              << "\", \"note\": \"partial results written with per-row validity labels\"}\n";
}

int run_scan(const Overrides& o, mw::Preset preset) {
    const mw::RunConfig cfg = build_config(o, preset);
    const mw::FisherTrace trace = mw::scan(cfg.scan);
    mw::write_trace(trace, cfg.format, cfg.output_path);
    std::cout << "wrote " << cfg.output_path << " (" << trace.rows.size() << " rows)\n";
    if (!trace.all_valid()) {
        report_numerical_flag("scan produced invalid rows");
        return kExitNumerical;
    }
    return kExitOk;
}

int run_resolution_sweep(const Overrides& o, const std::string& preset_flag) {
    const auto preset = mw::preset_from_name(preset_flag);
    if (!preset || (*preset != mw::Preset::kc && *preset != mw::Preset::ramsey))
        throw mw::ConfigError("resolution-sweep: --preset must be 'kc' or 'ramsey'");
    mw::RunConfig cfg = build_config(o, *preset);
    if (cfg.sigma_p_values.empty()) {
        cfg.sigma_p_values = {0.0,  0.002, 0.005, 0.01, 0.02, 0.035,
                              0.05, 0.07,  0.1,   0.2,  0.5,  1.0,  2.0};
    }
    const mw::ResolutionSweep sweep = mw::resolution_sweep(cfg.scan, cfg.sigma_p_values);
    mw::write_file_atomic(cfg.output_path, cfg.format == mw::OutputFormat::csv
                                               ? mw::resolution_csv(sweep)
                                               : mw::resolution_json(sweep));
    std::cout << "wrote " << cfg.output_path << " (" << sweep.rows.size() << " rows)\n";
    for (const auto& r : sweep.rows) {
        if (!r.valid) {
            report_numerical_flag("resolution sweep produced invalid rows");
            return kExitNumerical;
        }
    }
    return kExitOk;
}

int run_pulse_duration(const Overrides& o) {
    mw::RunConfig cfg = build_config(o, mw::Preset::kc);
    if (cfg.delta_t_values.empty()) {
        cfg.delta_t_values = {1e-3 * cfg.scan.t_pi, 0.1 * cfg.scan.t_pi, 0.2 * cfg.scan.t_pi,
                              0.4 * cfg.scan.t_pi};
    }
    cfg.scan.finite_pulse_dt.reset(); // the sweep sets per-row durations itself
    const mw::PulseDurationSweep sweep = mw::pulse_duration_sweep(cfg.scan, cfg.delta_t_values);
    mw::write_file_atomic(cfg.output_path, cfg.format == mw::OutputFormat::csv
                                               ? mw::pulse_duration_csv(sweep)
                                               : mw::pulse_duration_json(sweep));
    std::cout << "wrote " << cfg.output_path << " (" << sweep.rows.size() << " rows)\n";
    for (const auto& r : sweep.rows) {
        if (!r.valid) {
            report_numerical_flag("pulse-duration sweep produced invalid rows");
            return kExitNumerical;
        }
    }
    return kExitOk;
}

int run_state_dump(const Overrides& o, const std::string& preset_flag,
                   std::optional<double> time) {
    const auto preset = mw::preset_from_name(preset_flag);
    if (!preset) throw mw::ConfigError("state-dump: unknown preset '" + preset_flag + "'");
    const mw::RunConfig cfg = build_config(o, *preset);
    mw::Spinor state = mw::make_initial_state(cfg.scan);
    if (time) {
        mw::SequenceSpec seq;
        switch (*preset) {
            case mw::Preset::kc:
            case mw::Preset::kc_chirped: seq = mw::build_kc(cfg.scan.t_pi, *time); break;
            case mw::Preset::ramsey: seq = mw::build_ramsey(*time); break;
            case mw::Preset::trap:
                seq = mw::build_trap_scheme(cfg.scan.t_pi, cfg.scan.effective_trap_omega(),
                                            *time, cfg.scan.physical);
                break;
        }
        mw::RunDiagnostics diag;
        state = mw::run_sequence(seq, cfg.scan.physical.g_offset, state, cfg.scan.engine, &diag);
        if (!diag.valid) {
            mw::write_file_atomic(cfg.output_path, mw::state_dump_csv(state));
            report_numerical_flag(diag.reason);
            return kExitNumerical;
        }
    }
    mw::write_file_atomic(cfg.output_path, mw::state_dump_csv(state));
    std::cout << "wrote " << cfg.output_path << "\n";
    return kExitOk;
}

int run_validate(const Overrides& o, const std::string& preset_flag, bool si, double si_k0,
                 double si_mass, double si_hbar) {
    const auto preset = mw::preset_from_name(preset_flag);
    if (!preset) throw mw::ConfigError("validate: unknown preset '" + preset_flag + "'");
    const mw::RunConfig cfg = build_config(o, *preset);
    std::cout << mw::describe_config(cfg, si, si_k0, si_mass, si_hbar);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"matterwave interferometer sensitivity scans"};
    app.require_subcommand(1);

    Overrides o;
    std::string sweep_preset = "kc";
    std::string dump_preset = "kc";
    std::string validate_preset = "kc";
    std::optional<double> dump_time;
    bool si = false;
    // Rb-87 laser-cooling defaults for the SI report only.
    double si_k0 = 1.6e7, si_mass = 1.44316e-25, si_hbar = 1.0545718e-34;

    auto* scan_kc = app.add_subcommand("scan-kc", "Fisher scan of the three-pulse sequence");
    auto* scan_chirped =
        app.add_subcommand("scan-kc-chirped", "three-pulse scan with the chirped input state");
    auto* scan_trap = app.add_subcommand("scan-trap", "trap-assisted readout scan");
    auto* scan_ramsey = app.add_subcommand("scan-ramsey", "mirrorless (Ramsey) scan");
    auto* res_sweep =
        app.add_subcommand("resolution-sweep", "momentum CFI vs detection resolution");
    auto* pulse_dur =
        app.add_subcommand("pulse-duration", "Fisher columns vs finite pulse duration");
    auto* state_dump = app.add_subcommand("state-dump", "write a wavefunction table");
    auto* validate = app.add_subcommand("validate", "echo the config and derived quantities");

    for (CLI::App* cmd : {scan_kc, scan_chirped, scan_trap, scan_ramsey, res_sweep, pulse_dur,
                          state_dump, validate}) {
        add_common_flags(cmd, o);
    }
    res_sweep->add_option("--preset", sweep_preset, "kc or ramsey");
    state_dump->add_option("--preset", dump_preset, "sequence preset");
    state_dump->add_option("--time", dump_time, "evolve the preset to this time first");
    validate->add_option("--preset", validate_preset, "sequence preset");
    validate->add_flag("--si", si, "report SI scales via the natural-unit conversion");
    validate->add_option("--si-k0", si_k0, "SI wavenumber for the --si report");
    validate->add_option("--si-mass", si_mass, "SI mass for the --si report");
    validate->add_option("--si-hbar", si_hbar, "SI hbar for the --si report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan_kc->parsed()) return run_scan(o, mw::Preset::kc);
        if (scan_chirped->parsed()) return run_scan(o, mw::Preset::kc_chirped);
        if (scan_trap->parsed()) return run_scan(o, mw::Preset::trap);
        if (scan_ramsey->parsed()) return run_scan(o, mw::Preset::ramsey);
        if (res_sweep->parsed()) return run_resolution_sweep(o, sweep_preset);
        if (pulse_dur->parsed()) return run_pulse_duration(o);
        if (state_dump->parsed()) return run_state_dump(o, dump_preset, dump_time);
        if (validate->parsed()) return run_validate(o, validate_preset, si, si_k0, si_mass, si_hbar);
    } catch (const mw::ConfigError& e) {
        std::cerr << "{\"error\": \"config\", \"detail\": \"" << e.what() << "\"}\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"runtime\", \"detail\": \"" << e.what() << "\"}\n";
        return 1;
    }
    return kExitOk;
}
