#include "matterwave/run_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace matterwave {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError("config: '" + where + "' must be an object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            const std::string path = where.empty() ? item.key() : where + "." + item.key();
            throw ConfigError("config: unknown key '" + path + "'");
        }
    }
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError("config: '" + where + "' must be a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ConfigError("config: '" + where + "' must be an integer");
    return j.get<int>();
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigError("config: '" + where + "' must be a string");
    return j.get<std::string>();
}

std::vector<double> get_number_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError("config: '" + where + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(get_number(v, where + "[]"));
    return out;
}

} // namespace

RunConfig default_run_config(Preset preset) {
    RunConfig cfg;
    cfg.scan.preset = preset;
    return cfg;
}

RunConfig parse_run_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    // Worker count deliberately stays out of the schema: it comes from the
    // MATTERWAVE_WORKERS environment variable alone and never changes results.
    check_keys(j, "", {"preset", "physical", "grid", "state", "timing", "fisher", "pulses",
                       "trap", "resolution", "sweep", "engine", "output"});

    RunConfig cfg;

    if (j.contains("preset")) {
        const auto name = get_string(j["preset"], "preset");
        const auto p = preset_from_name(name);
        if (!p) throw ConfigError("config: unknown preset '" + name + "'");
        cfg.scan.preset = *p;
    }

    if (j.contains("physical")) {
        const json& p = j["physical"];
        check_keys(p, "physical", {"hbar", "mass", "k0", "g_offset"});
        if (p.contains("hbar")) cfg.scan.physical.hbar = get_number(p["hbar"], "physical.hbar");
        if (p.contains("mass")) cfg.scan.physical.mass = get_number(p["mass"], "physical.mass");
        if (p.contains("k0")) cfg.scan.physical.k0 = get_number(p["k0"], "physical.k0");
        if (p.contains("g_offset"))
            cfg.scan.physical.g_offset = get_number(p["g_offset"], "physical.g_offset");
        try {
            cfg.scan.physical.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }

    if (j.contains("grid")) {
        const json& g = j["grid"];
        check_keys(g, "grid", {"n_points", "z_min", "z_max"});
        if (g.contains("n_points")) cfg.scan.grid_n = get_int(g["n_points"], "grid.n_points");
        if (g.contains("z_min")) cfg.scan.grid_z_min = get_number(g["z_min"], "grid.z_min");
        if (g.contains("z_max")) cfg.scan.grid_z_max = get_number(g["z_max"], "grid.z_max");
    }

    if (j.contains("state")) {
        const json& s = j["state"];
        check_keys(s, "state", {"kind", "sigma", "z_center", "p_center"});
        if (s.contains("kind")) {
            const auto kind = get_string(s["kind"], "state.kind");
            if (kind == "chirped") {
                cfg.scan.chirped_state = true;
            } else if (kind == "gaussian") {
                cfg.scan.chirped_state = false;
            } else {
                throw ConfigError("config: state.kind must be 'gaussian' or 'chirped'");
            }
        }
        if (s.contains("sigma")) cfg.scan.sigma = get_number(s["sigma"], "state.sigma");
        if (s.contains("z_center"))
            cfg.scan.state_z_center = get_number(s["z_center"], "state.z_center");
        if (s.contains("p_center"))
            cfg.scan.state_p_center = get_number(s["p_center"], "state.p_center");
    }

    if (j.contains("timing")) {
        const json& t = j["timing"];
        check_keys(t, "timing", {"t_pi", "scan_start", "scan_stop", "scan_points"});
        if (t.contains("t_pi")) cfg.scan.t_pi = get_number(t["t_pi"], "timing.t_pi");
        if (t.contains("scan_start"))
            cfg.scan_start = get_number(t["scan_start"], "timing.scan_start");
        if (t.contains("scan_stop")) cfg.scan_stop = get_number(t["scan_stop"], "timing.scan_stop");
        if (t.contains("scan_points"))
            cfg.scan_points = get_int(t["scan_points"], "timing.scan_points");
        if (cfg.scan.t_pi <= 0.0) throw ConfigError("config: timing.t_pi must be positive");
    }

    if (j.contains("fisher")) {
        const json& f = j["fisher"];
        check_keys(f, "fisher", {"dg", "floor", "bases", "fq_numeric", "fq_analytic"});
        if (f.contains("dg")) cfg.scan.dg = get_number(f["dg"], "fisher.dg");
        if (f.contains("floor")) cfg.scan.floor = get_number(f["floor"], "fisher.floor");
        if (f.contains("fq_numeric")) cfg.scan.want_fq_numeric = f["fq_numeric"].get<bool>();
        if (f.contains("fq_analytic")) cfg.scan.want_fq_analytic = f["fq_analytic"].get<bool>();
        if (f.contains("bases")) {
            if (!f["bases"].is_array()) throw ConfigError("config: fisher.bases must be an array");
            cfg.scan.bases.clear();
            for (const auto& b : f["bases"]) {
                const auto name = get_string(b, "fisher.bases[]");
                if (name == "population") {
                    cfg.scan.bases.push_back(Basis::population);
                } else if (name == "position") {
                    cfg.scan.bases.push_back(Basis::position);
                } else if (name == "momentum") {
                    cfg.scan.bases.push_back(Basis::momentum);
                } else {
                    throw ConfigError("config: unknown basis '" + name + "'");
                }
            }
        }
    }

    if (j.contains("pulses")) {
        const json& p = j["pulses"];
        check_keys(p, "pulses", {"mode", "delta_t"});
        std::string mode = "instantaneous";
        if (p.contains("mode")) mode = get_string(p["mode"], "pulses.mode");
        if (mode == "finite") {
            if (!p.contains("delta_t"))
                throw ConfigError("config: pulses.mode 'finite' requires pulses.delta_t");
            cfg.scan.finite_pulse_dt = get_number(p["delta_t"], "pulses.delta_t");
            if (*cfg.scan.finite_pulse_dt <= 0.0)
                throw ConfigError("config: pulses.delta_t must be positive");
        } else if (mode != "instantaneous") {
            throw ConfigError("config: pulses.mode must be 'instantaneous' or 'finite'");
        }
    }

    if (j.contains("trap")) {
        const json& t = j["trap"];
        check_keys(t, "trap", {"omega"});
        if (t.contains("omega")) cfg.scan.trap_omega = get_number(t["omega"], "trap.omega");
    }

    if (j.contains("resolution")) {
        const json& r = j["resolution"];
        check_keys(r, "resolution", {"sigma_p"});
        if (r.contains("sigma_p"))
            cfg.sigma_p_values = get_number_list(r["sigma_p"], "resolution.sigma_p");
    }

    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        check_keys(s, "sweep", {"delta_t"});
        if (s.contains("delta_t"))
            cfg.delta_t_values = get_number_list(s["delta_t"], "sweep.delta_t");
    }

    if (j.contains("engine")) {
        const json& e = j["engine"];
        check_keys(e, "engine",
                   {"free_method", "dt_free", "trap_phase_per_step", "pulse_substeps"});
        if (e.contains("free_method")) {
            const auto m = get_string(e["free_method"], "engine.free_method");
            if (m == "analytic") {
                cfg.scan.engine.free_method = EngineConfig::FreeMethod::analytic;
            } else if (m == "split_step") {
                cfg.scan.engine.free_method = EngineConfig::FreeMethod::split_step;
            } else {
                throw ConfigError("config: engine.free_method must be 'analytic' or 'split_step'");
            }
        }
        if (e.contains("dt_free"))
            cfg.scan.engine.dt_free = get_number(e["dt_free"], "engine.dt_free");
        if (e.contains("trap_phase_per_step"))
            cfg.scan.engine.trap_phase_per_step =
                get_number(e["trap_phase_per_step"], "engine.trap_phase_per_step");
        if (e.contains("pulse_substeps"))
            cfg.scan.engine.pulse_substeps = get_int(e["pulse_substeps"], "engine.pulse_substeps");
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        check_keys(o, "output", {"path", "format"});
        if (o.contains("path")) cfg.output_path = get_string(o["path"], "output.path");
        if (o.contains("format")) {
            const auto f = format_from_name(get_string(o["format"], "output.format"));
            if (!f) throw ConfigError("config: output.format must be 'csv' or 'json'");
            cfg.format = *f;
        }
    }

    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

void finalize_times(RunConfig& cfg) {
    const double t_pi = cfg.scan.t_pi;
    double start = cfg.scan_start;
    double stop = cfg.scan_stop;
    int points = cfg.scan_points;

    if (cfg.scan.preset == Preset::trap) {
        const double period = 2.0 * std::numbers::pi / cfg.scan.effective_trap_omega();
        if (start < 0.0) start = 2.0 * t_pi;
        if (stop < 0.0) stop = 2.0 * t_pi + period;
        if (points <= 0) points = 400;
    } else {
        if (start < 0.0) start = 0.0;
        if (stop < 0.0) stop = 2.0 * t_pi;
        if (points <= 0) points = 200;
    }
    if (stop < start) throw ConfigError("config: timing.scan_stop precedes timing.scan_start");
    cfg.scan_start = start;
    cfg.scan_stop = stop;
    cfg.scan_points = points;
    cfg.scan.times = linspace(start, stop, points);
}

std::string describe_config(const RunConfig& cfg, bool si, double k0_si, double mass_si,
                            double hbar_si) {
    const ScanConfig& s = cfg.scan;
    const Grid grid = make_grid(s.grid_n, s.grid_z_min, s.grid_z_max);
    const double delta_p = s.physical.hbar / (std::sqrt(2.0) * s.sigma);
    const double nyquist = std::numbers::pi * s.physical.hbar / grid.dz();
    const double auto_dg = dg_for_phase(s.physical.k0, 2.0 * s.t_pi, s.t_pi);

    std::ostringstream out;
    out << "preset:            " << preset_name(s.preset) << "\n";
    out << "state:             " << (s.uses_chirped_state() ? "chirped" : "gaussian")
        << " (sigma = " << s.sigma << ")\n";
    out << "t_pi:              " << s.t_pi << "\n";
    out << "scan window:       [" << cfg.scan_start << ", " << cfg.scan_stop << "] in "
        << cfg.scan_points << " points\n";
    out << "grid:              n = " << s.grid_n << ", z in [" << s.grid_z_min << ", "
        << s.grid_z_max << "], dz = " << grid.dz() << "\n";
    out << "momentum lattice:  spacing " << s.physical.hbar * grid.dk() << ", max |p| "
        << nyquist << "\n";
    out << "initial dp width:  " << delta_p << " (hbar/sqrt(2) sigma)\n";
    out << "fisher dg:         " << (s.dg > 0.0 ? s.dg : auto_dg)
        << (s.dg > 0.0 ? " (configured)" : " (auto)") << "\n";
    out << "probability floor: " << s.floor << "\n";
    if (s.preset == Preset::trap) {
        out << "trap omega:        " << s.effective_trap_omega() << ", centre z0 = "
            << s.physical.hbar * s.physical.k0 * s.t_pi / s.physical.mass << "\n";
    }
    if (s.finite_pulse_dt) out << "finite pulses:     delta_t = " << *s.finite_pulse_dt << "\n";
    out << "unit scale:        " << fq_semiclassical(s.physical.k0, s.t_pi)
        << " (k0^2 t_pi^4)\n";
    out << "output:            " << cfg.output_path << " (" << format_name(cfg.format) << ")\n";

    if (si) {
        const NaturalScales scales = natural_units(k0_si, mass_si, hbar_si);
        out << "SI report (k0 = " << k0_si << " 1/m, m = " << mass_si << " kg):\n";
        out << "  length unit L:   " << scales.length << " m\n";
        out << "  time unit t0:    " << scales.time << " s\n";
        out << "  sigma:           " << s.sigma * scales.length << " m\n";
        out << "  t_pi:            " << s.t_pi * scales.time << " s\n";
    }
    return out.str();
}

} // namespace matterwave
