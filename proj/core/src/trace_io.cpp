#include "matterwave/trace_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace matterwave {

namespace {

using nlohmann::json;

// 9 significant digits, stable across writes.
std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string opt9(const std::optional<double>& v) { return v ? fmt9(*v) : std::string(); }

json opt_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<double> opt_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

json trace_metadata(const FisherTrace& t) {
    json meta;
    meta["preset"] = t.preset;
    meta["t_pi"] = t.t_pi;
    meta["sigma"] = t.sigma;
    meta["unit_scale"] = t.unit_scale;
    meta["physical"] = {{"hbar", t.physical.hbar},
                        {"mass", t.physical.mass},
                        {"k0", t.physical.k0},
                        {"g_offset", t.physical.g_offset}};
    meta["grid"] = {{"n_points", t.grid_n}, {"z_min", t.grid_z_min}, {"z_max", t.grid_z_max}};
    meta["floor"] = t.floor;
    return meta;
}

} // namespace

const char* format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::optional<OutputFormat> format_from_name(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    return std::nullopt;
}

std::string trace_csv(const FisherTrace& trace) {
    std::ostringstream out;
    out << "t_over_Tpi, FQ_numeric, FQ_analytic, FC_pop, FC_pos, FC_mom\n";
    for (const auto& r : trace.rows) {
        out << fmt9(r.t / trace.t_pi) << ", " << opt9(r.fq_numeric) << ", "
            << opt9(r.fq_analytic) << ", " << opt9(r.fc_pop) << ", " << opt9(r.fc_pos) << ", "
            << opt9(r.fc_mom) << "\n";
    }
    return out.str();
}

std::string trace_json(const FisherTrace& trace) {
    json j;
    j["metadata"] = trace_metadata(trace);
    json rows = json::array();
    for (const auto& r : trace.rows) {
        json row;
        row["t"] = r.t;
        row["t_over_Tpi"] = r.t / trace.t_pi;
        row["FQ_numeric"] = opt_json(r.fq_numeric);
        row["FQ_analytic"] = opt_json(r.fq_analytic);
        row["FC_pop"] = opt_json(r.fc_pop);
        row["FC_pos"] = opt_json(r.fc_pos);
        row["FC_mom"] = opt_json(r.fc_mom);
        row["dg"] = r.dg_used;
        row["convergence_error"] = r.convergence_error;
        row["floor_sensitivity"] = r.floor_sensitivity;
        row["edge_fraction"] = r.edge_fraction;
        row["valid"] = r.valid;
        if (!r.diagnostic.empty()) row["diagnostic"] = r.diagnostic;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

FisherTrace trace_from_json(const std::string& text) {
    const json j = json::parse(text);
    FisherTrace t;
    const json& meta = j.at("metadata");
    t.preset = meta.at("preset").get<std::string>();
    t.t_pi = meta.at("t_pi").get<double>();
    t.sigma = meta.at("sigma").get<double>();
    t.unit_scale = meta.at("unit_scale").get<double>();
    t.physical.hbar = meta.at("physical").at("hbar").get<double>();
    t.physical.mass = meta.at("physical").at("mass").get<double>();
    t.physical.k0 = meta.at("physical").at("k0").get<double>();
    t.physical.g_offset = meta.at("physical").at("g_offset").get<double>();
    t.grid_n = meta.at("grid").at("n_points").get<int>();
    t.grid_z_min = meta.at("grid").at("z_min").get<double>();
    t.grid_z_max = meta.at("grid").at("z_max").get<double>();
    t.floor = meta.at("floor").get<double>();
    for (const auto& row : j.at("rows")) {
        TraceRow r;
        r.t = row.at("t").get<double>();
        r.fq_numeric = opt_from_json(row.at("FQ_numeric"));
        r.fq_analytic = opt_from_json(row.at("FQ_analytic"));
        r.fc_pop = opt_from_json(row.at("FC_pop"));
        r.fc_pos = opt_from_json(row.at("FC_pos"));
        r.fc_mom = opt_from_json(row.at("FC_mom"));
        r.dg_used = row.at("dg").get<double>();
        r.convergence_error = row.at("convergence_error").get<double>();
        r.floor_sensitivity = row.at("floor_sensitivity").get<double>();
        r.edge_fraction = row.at("edge_fraction").get<double>();
        r.valid = row.at("valid").get<bool>();
        if (row.contains("diagnostic")) r.diagnostic = row.at("diagnostic").get<std::string>();
        t.rows.push_back(std::move(r));
    }
    return t;
}

std::string resolution_csv(const ResolutionSweep& sweep) {
    std::ostringstream out;
    out << "sigma_p, FC_mom\n";
    for (const auto& r : sweep.rows) out << fmt9(r.sigma_p) << ", " << fmt9(r.fc_mom) << "\n";
    return out.str();
}

std::string resolution_json(const ResolutionSweep& sweep) {
    json j;
    j["metadata"] = {{"preset", sweep.preset},
                     {"t", sweep.t},
                     {"t_pi", sweep.t_pi},
                     {"unit_scale", sweep.unit_scale}};
    json rows = json::array();
    for (const auto& r : sweep.rows) {
        rows.push_back({{"sigma_p", r.sigma_p},
                        {"FC_mom", r.fc_mom},
                        {"convergence_error", r.convergence_error},
                        {"valid", r.valid}});
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string pulse_duration_csv(const PulseDurationSweep& sweep) {
    std::ostringstream out;
    out << "delta_t_over_Tpi, FQ, FC_pop, FC_pos, FC_mom, sequence_time\n";
    for (const auto& r : sweep.rows) {
        out << fmt9(r.delta_t / sweep.t_pi) << ", " << opt9(r.fq) << ", " << opt9(r.fc_pop)
            << ", " << opt9(r.fc_pos) << ", " << opt9(r.fc_mom) << ", "
            << fmt9(r.sequence_time) << "\n";
    }
    return out.str();
}

std::string pulse_duration_json(const PulseDurationSweep& sweep) {
    json j;
    j["metadata"] = {{"t_pi", sweep.t_pi}, {"unit_scale", sweep.unit_scale}};
    json rows = json::array();
    for (const auto& r : sweep.rows) {
        rows.push_back({{"delta_t", r.delta_t},
                        {"FQ", opt_json(r.fq)},
                        {"FC_pop", opt_json(r.fc_pop)},
                        {"FC_pos", opt_json(r.fc_pos)},
                        {"FC_mom", opt_json(r.fc_mom)},
                        {"sequence_time", r.sequence_time},
                        {"valid", r.valid}});
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string state_dump_csv(const Spinor& state) {
    std::ostringstream out;
    out << "z, re_a, im_a, re_b, im_b\n";
    for (int i = 0; i < state.grid.n(); ++i) {
        out << fmt9(state.grid.z()[i]) << ", " << fmt9(state.a[i].real()) << ", "
            << fmt9(state.a[i].imag()) << ", " << fmt9(state.b[i].real()) << ", "
            << fmt9(state.b[i].imag()) << "\n";
    }
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path dir = target.parent_path().empty() ? fs::path(".") : target.parent_path();
    std::error_code ec;
    fs::create_directories(dir, ec);

    std::random_device rd;
    const fs::path tmp = dir / (target.filename().string() + ".tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
        out << contents;
        if (!out) throw std::runtime_error("write_file_atomic: write failed for " + tmp.string());
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("write_file_atomic: rename to " + path + " failed: " +
                                 ec.message());
    }
}

void write_trace(const FisherTrace& trace, OutputFormat format, const std::string& path) {
    write_file_atomic(path, format == OutputFormat::csv ? trace_csv(trace) : trace_json(trace));
}

} // namespace matterwave
