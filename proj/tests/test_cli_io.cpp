#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "matterwave/run_config.hpp"
#include "matterwave/scan.hpp"
#include "matterwave/trace_io.hpp"

using namespace matterwave;
namespace fs = std::filesystem;

namespace {

ScanConfig tiny_scan() {
    ScanConfig cfg;
    cfg.preset = Preset::kc;
    cfg.grid_n = 512;
    cfg.grid_z_min = -64.0;
    cfg.grid_z_max = 96.0;
    cfg.t_pi = 5.0;
    cfg.times = linspace(0.0, 10.0, 4);
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("mwgrav_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

} // namespace

TEST_CASE("config parsing applies defaults and rejects unknown keys") {
    const RunConfig cfg = parse_run_config(R"({
        "preset": "ramsey",
        "timing": {"t_pi": 20.0, "scan_points": 17},
        "grid": {"n_points": 1024, "z_min": -64.0, "z_max": 96.0}
    })");
    CHECK(cfg.scan.preset == Preset::ramsey);
    CHECK(cfg.scan.t_pi == doctest::Approx(20.0));
    CHECK(cfg.scan_points == 17);
    CHECK(cfg.scan.grid_n == 1024);
    CHECK(cfg.scan.sigma == doctest::Approx(10.0)); // default

    CHECK_THROWS_AS(parse_run_config(R"({"presets": "kc"})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"grid": {"n": 8}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"preset": "unknown"})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"fisher": {"bases": ["speed"]}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"pulses": {"mode": "finite"}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"physical": {"k0": -1.0}})"), ConfigError);
}

TEST_CASE("time window defaults follow the preset") {
    RunConfig kc = default_run_config(Preset::kc);
    finalize_times(kc);
    CHECK(kc.scan.times.size() == 200);
    CHECK(kc.scan.times.front() == doctest::Approx(0.0));
    CHECK(kc.scan.times.back() == doctest::Approx(2.0 * kc.scan.t_pi));

    RunConfig trap = default_run_config(Preset::trap);
    finalize_times(trap);
    CHECK(trap.scan.times.size() == 400);
    CHECK(trap.scan.times.front() == doctest::Approx(2.0 * trap.scan.t_pi));
    const double period = 2.0 * std::numbers::pi / trap.scan.effective_trap_omega();
    CHECK(trap.scan.times.back() == doctest::Approx(2.0 * trap.scan.t_pi + period));
}

TEST_CASE("csv output carries the pinned header at nine digits") {
    const FisherTrace tr = scan(tiny_scan());
    const std::string csv = trace_csv(tr);
    CHECK(csv.rfind("t_over_Tpi, FQ_numeric, FQ_analytic, FC_pop, FC_pos, FC_mom\n", 0) == 0);

    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == tr.rows.size() + 1);

    FisherTrace empty = tr;
    empty.rows.clear();
    CHECK(trace_csv(empty) == "t_over_Tpi, FQ_numeric, FQ_analytic, FC_pop, FC_pos, FC_mom\n");

    // missing columns come out as empty fields
    ScanConfig cfg = tiny_scan();
    cfg.bases = {Basis::population};
    const std::string partial = trace_csv(scan(cfg));
    CHECK(partial.find(", , \n") != std::string::npos);
}

TEST_CASE("identical configs give byte-identical csv") {
    const ScanConfig cfg = tiny_scan();
    const std::string a = trace_csv(scan(cfg));
    const std::string b = trace_csv(scan(cfg));
    CHECK(a == b);
}

TEST_CASE("json trace round-trips exactly") {
    const FisherTrace tr = scan(tiny_scan());
    const FisherTrace back = trace_from_json(trace_json(tr));
    REQUIRE(back.rows.size() == tr.rows.size());
    CHECK(back.preset == tr.preset);
    CHECK(back.t_pi == tr.t_pi);
    CHECK(back.unit_scale == tr.unit_scale);
    for (std::size_t i = 0; i < tr.rows.size(); ++i) {
        CHECK(*back.rows[i].fq_numeric == *tr.rows[i].fq_numeric);
        CHECK(*back.rows[i].fc_pop == *tr.rows[i].fc_pop);
        CHECK(*back.rows[i].fc_pos == *tr.rows[i].fc_pos);
        CHECK(*back.rows[i].fc_mom == *tr.rows[i].fc_mom);
        CHECK(back.rows[i].dg_used == tr.rows[i].dg_used);
        CHECK(back.rows[i].valid == tr.rows[i].valid);
    }
}

TEST_CASE("atomic writes leave no temporaries behind") {
    TempDir tmp;
    const fs::path target = tmp.path / "trace.csv";
    write_file_atomic(target.string(), "payload\n");
    CHECK(slurp(target) == "payload\n");
    std::size_t entries = 0;
    for (const auto& e : fs::directory_iterator(tmp.path)) {
        ++entries;
        CHECK(e.path() == target);
    }
    CHECK(entries == 1);
}

TEST_CASE("state dump table") {
    const Grid g = make_grid(64, -32.0, 32.0);
    const Spinor s = gaussian(g, PhysicalParams{}, 4.0);
    const std::string dump = state_dump_csv(s);
    CHECK(dump.rfind("z, re_a, im_a, re_b, im_b\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : dump) lines += c == '\n';
    CHECK(lines == 65);
}

TEST_CASE("config description lists derived quantities") {
    RunConfig cfg = default_run_config(Preset::kc);
    finalize_times(cfg);
    const std::string text = describe_config(cfg, false, 0, 0, 0);
    CHECK(text.find("initial dp width") != std::string::npos);
    CHECK(text.find("0.0707107") != std::string::npos);
    CHECK(text.find("unit scale") != std::string::npos);

    const std::string si =
        describe_config(cfg, true, 1.6e7, 1.44316e-25, 1.0545718e-34);
    CHECK(si.find("6.25e-08 m") != std::string::npos);
}

#ifdef MWGRAV_BIN
TEST_CASE("cli round trip through a config file") {
    TempDir tmp;
    const fs::path cfg_path = tmp.path / "run.json";
    const fs::path out_path = tmp.path / "out.csv";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({
            "preset": "kc",
            "grid": {"n_points": 512, "z_min": -64.0, "z_max": 96.0},
            "timing": {"t_pi": 5.0, "scan_points": 3},
            "output": {"path": ")"
            << out_path.string() << R"(", "format": "csv"}
        })";
    }
    const std::string base = std::string(MWGRAV_BIN);

    CHECK(std::system((base + " validate --config " + cfg_path.string() + " > /dev/null").c_str()) == 0);
    CHECK(std::system((base + " scan-kc --config " + cfg_path.string() + " > /dev/null").c_str()) == 0);
    const std::string csv = slurp(out_path);
    CHECK(csv.rfind("t_over_Tpi,", 0) == 0);

    // config errors exit with status 2
    const fs::path bad_path = tmp.path / "bad.json";
    std::ofstream(bad_path) << R"({"unknown_key": 1})";
    const int rc = std::system(
        (base + " scan-kc --config " + bad_path.string() + " 2> /dev/null").c_str());
    CHECK(WEXITSTATUS(rc) == 2);
}
#endif
