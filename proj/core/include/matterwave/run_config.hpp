#pragma once

#include <stdexcept>
#include <string>

#include "matterwave/scan.hpp"
#include "matterwave/trace_io.hpp"

namespace matterwave {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One fully validated experiment description. Every run is reproducible
// from this single artifact; CLI flags only override scalar fields.
struct RunConfig {
    ScanConfig scan;

    int scan_points = 0;      // 0: preset default (200; trap window 400)
    double scan_start = -1.0; // <0: preset default
    double scan_stop = -1.0;

    std::vector<double> sigma_p_values;  // resolution sweep, units hbar*k0
    std::vector<double> delta_t_values;  // pulse-duration sweep, absolute times

    std::string output_path = "trace.csv";
    OutputFormat format = OutputFormat::csv;
};

RunConfig default_run_config(Preset preset);

// Strict parse: unknown keys anywhere are rejected.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Fill scan.times from the timing fields and preset defaults.
void finalize_times(RunConfig& cfg);

// Config echo plus derived quantities (momentum width, lattice Nyquist,
// automatic dg); optional SI report for the given laser wavenumber and mass.
std::string describe_config(const RunConfig& cfg, bool si, double k0_si, double mass_si,
                            double hbar_si);

} // namespace matterwave
