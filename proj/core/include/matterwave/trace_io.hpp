#pragma once

#include <string>

#include "matterwave/scan.hpp"

namespace matterwave {

enum class OutputFormat { csv, json };

const char* format_name(OutputFormat f);
std::optional<OutputFormat> format_from_name(std::string_view name);

// CSV with header "t_over_Tpi, FQ_numeric, FQ_analytic, FC_pop, FC_pos,
// FC_mom"; Fisher values in k0^2 t_pi^4 units at 9 significant digits,
// missing columns left empty.
std::string trace_csv(const FisherTrace& trace);

// Column arrays plus the full metadata needed to reproduce the run.
std::string trace_json(const FisherTrace& trace);
FisherTrace trace_from_json(const std::string& text);

std::string resolution_csv(const ResolutionSweep& sweep);
std::string resolution_json(const ResolutionSweep& sweep);

std::string pulse_duration_csv(const PulseDurationSweep& sweep);
std::string pulse_duration_json(const PulseDurationSweep& sweep);

// Text table: z, Re a, Im a, Re b, Im b.
std::string state_dump_csv(const Spinor& state);

// Temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

void write_trace(const FisherTrace& trace, OutputFormat format, const std::string& path);

} // namespace matterwave
