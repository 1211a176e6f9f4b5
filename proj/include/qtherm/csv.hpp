// csv.hpp — CSV emission (RFC 4180, header row, 17 significant digits)

#pragma once

#include "qtherm/analysis.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qtherm::csv {

// Shortest form is not required; 17 significant digits round-trip any double.
std::string number(double value);
std::string number(const std::optional<double>& value); // empty field when absent

// Tw, g, j_h, j_c, j_w, j_c12, j_c13, coherence_abs, cop, carnot_cop, entropy_rate
inline constexpr const char* kReportHeader =
    "Tw,g,j_h,j_c,j_w,j_c12,j_c13,coherence_abs,cop,carnot_cop,entropy_rate";

std::string report_row(double t_work, double g, const CurrentReport& report);

// Failed points keep Tw and g and carry "error" in every report column.
void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows);

// Report columns followed by alpha_J, heat_function, amplifier_function.
void write_phase_map(std::ostream& out, const std::vector<PhaseMapRow>& rows);

} // namespace qtherm::csv
