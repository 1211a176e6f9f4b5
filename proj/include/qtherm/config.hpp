// config.hpp — JSON run configuration for the command-line tool
//
// All physical quantities are read as absolute values and normalized to units of ωa
// (frequencies, couplings and temperatures divided by ωa, times multiplied by ωa).
// Unknown keys are rejected at every level.

#pragma once

#include "qtherm/analysis.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace qtherm {

struct SweepSettings {
    std::optional<SweepGrid> tw;
    std::optional<SweepGrid> g;
};

struct ValveSettings {
    BathLabel current{BathLabel::hot};
    std::optional<Bracket> bracket;
    double tolerance{1e-10};
};

struct RefrigeratorSettings {
    std::optional<Bracket> bracket;
    std::optional<SweepGrid> grid;
};

struct AmplifierSettings {
    std::optional<SweepGrid> grid;
    double step{1e-5};
};

struct DynamicsSettings {
    int initial_level{1}; // 1, 2 or 3 in the generator's basis
    SecularMode mode{SecularMode::partial};
    std::optional<double> t_final;
    double relaxation_times{10.0}; // used when t_final is absent
    std::optional<double> dt;
    std::size_t sample_every{1};
};

struct PhaseMapSettings {
    std::optional<SweepGrid> tw;
    std::optional<SweepGrid> g;
    double valve_tolerance{1e-9};
    double step{1e-5};
};

struct RunConfig {
    DeviceConfig device;
    double omega_a_unit{1.0}; // ωa as given in the file
    SweepSettings sweep;
    ValveSettings valve;
    RefrigeratorSettings refrigerator;
    AmplifierSettings amplifier;
    ThermometerOptions thermometer;
    DynamicsSettings dynamics;
    PhaseMapSettings phase_map;
};

// Throws ValidationError on malformed JSON, schema violations or invalid values.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::string& path);

// "lo,hi" as given on the command line (no unit conversion)
Bracket parse_bracket(std::string_view text);
// "start,stop,points" as given on the command line (no unit conversion)
SweepGrid parse_grid(SweepVariable variable, std::string_view text);

} // namespace qtherm
