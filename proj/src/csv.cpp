// csv.cpp — CSV formatting helpers

#include "qtherm/csv.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace qtherm::csv {

namespace {

constexpr int kReportColumns = 9; // report columns after Tw and g

std::string error_fields(int count) {
    std::string out;
    for (int i = 0; i < count; ++i) out += ",error";
    return out;
}

} // namespace

std::string number(double value) {
    std::ostringstream os;
    os << std::setprecision(17) << value;
    return os.str();
}

std::string number(const std::optional<double>& value) {
    return value ? number(*value) : std::string{};
}

std::string report_row(double t_work, double g, const CurrentReport& r) {
    std::ostringstream os;
    os << number(t_work) << ',' << number(g) << ',' << number(r.j_h) << ',' << number(r.j_c) << ','
       << number(r.j_w) << ',' << number(r.j_c12) << ',' << number(r.j_c13) << ',' << number(r.coherence_abs)
       << ',' << number(r.cop) << ',' << number(r.carnot_cop) << ',' << number(r.entropy_rate);
    return os.str();
}

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kReportHeader << '\n';
    for (const auto& row : rows) {
        if (row.report) {
            out << report_row(row.t_work, row.g, *row.report) << '\n';
        } else {
            out << number(row.t_work) << ',' << number(row.g) << error_fields(kReportColumns) << '\n';
        }
    }
}

void write_phase_map(std::ostream& out, const std::vector<PhaseMapRow>& rows) {
    out << kReportHeader << ",alpha_J,heat_function,amplifier_function\n";
    for (const auto& row : rows) {
        if (!row.report) {
            out << number(row.t_work) << ',' << number(row.g) << error_fields(kReportColumns + 3) << '\n';
            continue;
        }
        out << report_row(row.t_work, row.g, *row.report) << ',' << number(row.alpha_j) << ','
            << to_string(row.heat) << ',' << to_string(row.amplifier) << '\n';
    }
}

} // namespace qtherm::csv
