// analysis.hpp — Device-level analyses: valve points, thermometry, amplification, sweeps, phase maps

#pragma once

#include "qtherm/observables.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qtherm {

struct Bracket {
    double lo;
    double hi;
};

// Work-bath temperature at which the selected current vanishes, by bisection to relative
// tolerance `rel_tol` in Tw. Every evaluation re-solves the steady state.
// Throws NumericalError("no working point in bracket") without a sign change.
double find_current_zero(const DeviceConfig& config, BathLabel which, Bracket bracket, double rel_tol = 1e-10);

// Control temperature of the g = 0 equilibrium: ωa/Th = Δ/Tw + ωb/Tc.
double equilibrium_tw(double omega_a, double omega_b, double t_hot, double t_cold);

// Inverse of equilibrium_tw with ξ = ωb/ωa: Tc = Th Tw ξ / (Tw − (1−ξ)Th).
double tc_from_tw(double t_work, double t_hot, double xi);

// α_T = |∂Tw/∂Tc| = ξ(1−ξ)Th² / (ξTh − Tc)²
double sensitivity(double t_cold, double t_hot, double xi);

// Upper edge of the α_T-precision interval (ξTh, T'_c].
double critical_tc(double alpha, double t_hot, double xi);

struct ThermometerOptions {
    double stride{1.1};           // multiplicative Tw scan step starting at Th
    double tw_max_factor{1e3};    // give up above tw_max_factor · Th
    double rel_tol{1e-10};
};

struct ThermometerReading {
    double tw_star;
    double tc_estimate;
    double sensitivity;
    bool in_range;
};

// Simulated measurement: raise Tw from Th until J_h changes sign, bisect, and convert the
// working point to a sample temperature using only Th and ξ. The cold temperature in `config`
// plays the hidden sample. Requires g = 0.
ThermometerReading measure_temperature(const DeviceConfig& config, const ThermometerOptions& options = {});

// α_J = |∂J_c/∂J_w| by central differences in Tw with step `step · max(1, Tw)`.
double amplification_factor(const DeviceConfig& config, double t_work, double step = 1e-5);

enum class SweepVariable { work_temperature, coupling };

std::string_view to_string(SweepVariable variable) noexcept;
SweepVariable parse_sweep_variable(std::string_view text);

struct SweepGrid {
    SweepVariable variable{SweepVariable::work_temperature};
    double start{0.0};
    double stop{1.0};
    std::size_t points{2};

    void validate() const;
    std::vector<double> values() const;
};

// Copy of `config` with the swept variable set to `value`.
DeviceConfig with_value(const DeviceConfig& config, SweepVariable variable, double value);

struct SweepRow {
    double t_work;
    double g;
    std::optional<CurrentReport> report;
    std::string error;
};

// Outer grid (optional) varies slowest; rows come back in grid order regardless of `threads`.
std::vector<SweepRow> sweep(const DeviceConfig& config, const SweepGrid& inner,
                            const std::optional<SweepGrid>& outer = std::nullopt, unsigned threads = 1);

enum class HeatFunction { heater, valve, refrigerator };
enum class AmplifierFunction { amplifier, contraction, undefined };

std::string_view to_string(HeatFunction f) noexcept;
std::string_view to_string(AmplifierFunction f) noexcept;

HeatFunction classify_heat(const CurrentReport& report, double valve_tol = 1e-9);

struct PhaseMapOptions {
    double valve_tol{1e-9};
    double fd_step{1e-5};
    unsigned threads{1};
};

struct PhaseMapRow {
    double t_work;
    double g;
    std::optional<CurrentReport> report;
    std::optional<double> alpha_j;
    HeatFunction heat{HeatFunction::heater};
    AmplifierFunction amplifier{AmplifierFunction::undefined};
    std::string error;
};

// Rows ordered with g varying slowest and Tw fastest.
std::vector<PhaseMapRow> phase_map(const DeviceConfig& config, const SweepGrid& tw_grid, const SweepGrid& g_grid,
                                   const PhaseMapOptions& options = {});

} // namespace qtherm
