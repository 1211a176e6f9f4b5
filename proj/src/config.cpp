// config.cpp — JSON schema for run configurations

#include "qtherm/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace qtherm {

namespace {

using nlohmann::json;

void require_object(const json& j, std::string_view where) {
    if (!j.is_object()) throw ValidationError(std::string(where) + ": expected an object");
}

void reject_unknown(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
    require_object(j, where);
    for (const auto& item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ValidationError(std::string(where) + ": unknown key '" + item.key() + "'");
        }
    }
}

double number(const json& j, std::string_view key, std::string_view where) {
    if (!j.contains(key)) throw ValidationError(std::string(where) + ": missing key '" + std::string(key) + "'");
    const json& v = j.at(std::string(key));
    if (!v.is_number()) throw ValidationError(std::string(where) + "." + std::string(key) + ": expected a number");
    return v.get<double>();
}

double number_or(const json& j, std::string_view key, std::string_view where, double fallback) {
    return j.contains(key) ? number(j, key, where) : fallback;
}

SweepGrid grid_from(const json& j, SweepVariable variable, std::string_view where, double unit) {
    reject_unknown(j, where, {"start", "stop", "points"});
    SweepGrid grid;
    grid.variable = variable;
    grid.start = number(j, "start", where) / unit;
    grid.stop = number(j, "stop", where) / unit;
    const double points = number(j, "points", where);
    if (points < 2 || points != static_cast<double>(static_cast<std::size_t>(points))) {
        throw ValidationError(std::string(where) + ".points: expected an integer >= 2");
    }
    grid.points = static_cast<std::size_t>(points);
    grid.validate();
    return grid;
}

Bracket bracket_from(const json& j, std::string_view where, double unit) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ValidationError(std::string(where) + ": expected [lo, hi]");
    }
    Bracket b{j[0].get<double>() / unit, j[1].get<double>() / unit};
    if (!(b.lo > 0.0 && b.lo < b.hi)) throw ValidationError(std::string(where) + ": requires 0 < lo < hi");
    return b;
}

BathSpec bath_from(const json& j, double unit) {
    reject_unknown(j, "baths[]", {"label", "temperature", "gamma", "cutoff"});
    if (!j.contains("label") || !j.at("label").is_string()) throw ValidationError("baths[]: missing string 'label'");
    BathSpec b;
    b.label = parse_bath_label(j.at("label").get<std::string>());
    b.temperature = number(j, "temperature", "baths[]") / unit;
    b.gamma = number(j, "gamma", "baths[]");
    b.cutoff = number(j, "cutoff", "baths[]") / unit;
    return b;
}

RunConfig from_json(const json& root) {
    reject_unknown(root, "config",
                   {"system", "baths", "sweep", "valve", "refrigerator", "amplifier", "thermometer", "dynamics",
                    "phase_map"});
    RunConfig run;

    if (!root.contains("system")) throw ValidationError("config: missing key 'system'");
    const json& sys = root.at("system");
    reject_unknown(sys, "system", {"omega_a", "omega_b", "g"});
    const double unit = number(sys, "omega_a", "system");
    if (!(unit > 0.0)) throw ValidationError("omega_a must be positive");
    run.omega_a_unit = unit;
    run.device.system = {1.0, number(sys, "omega_b", "system") / unit, number_or(sys, "g", "system", 0.0) / unit};

    if (!root.contains("baths") || !root.at("baths").is_array()) throw ValidationError("config: missing array 'baths'");
    for (const json& b : root.at("baths")) run.device.baths.push_back(bath_from(b, unit));
    validate(run.device);

    if (root.contains("sweep")) {
        const json& s = root.at("sweep");
        reject_unknown(s, "sweep", {"tw", "g"});
        if (s.contains("tw")) run.sweep.tw = grid_from(s.at("tw"), SweepVariable::work_temperature, "sweep.tw", unit);
        if (s.contains("g")) run.sweep.g = grid_from(s.at("g"), SweepVariable::coupling, "sweep.g", unit);
    }
    if (root.contains("valve")) {
        const json& v = root.at("valve");
        reject_unknown(v, "valve", {"current", "bracket", "tolerance"});
        if (v.contains("current")) {
            if (!v.at("current").is_string()) throw ValidationError("valve.current: expected \"h\", \"c\" or \"w\"");
            run.valve.current = parse_bath_label(v.at("current").get<std::string>());
        }
        if (v.contains("bracket")) run.valve.bracket = bracket_from(v.at("bracket"), "valve.bracket", unit);
        run.valve.tolerance = number_or(v, "tolerance", "valve", run.valve.tolerance);
    }
    if (root.contains("refrigerator")) {
        const json& r = root.at("refrigerator");
        reject_unknown(r, "refrigerator", {"bracket", "tw"});
        if (r.contains("bracket")) run.refrigerator.bracket = bracket_from(r.at("bracket"), "refrigerator.bracket", unit);
        if (r.contains("tw")) {
            run.refrigerator.grid = grid_from(r.at("tw"), SweepVariable::work_temperature, "refrigerator.tw", unit);
        }
    }
    if (root.contains("amplifier")) {
        const json& a = root.at("amplifier");
        reject_unknown(a, "amplifier", {"tw", "step"});
        if (a.contains("tw")) run.amplifier.grid = grid_from(a.at("tw"), SweepVariable::work_temperature, "amplifier.tw", unit);
        run.amplifier.step = number_or(a, "step", "amplifier", run.amplifier.step);
    }
    if (root.contains("thermometer")) {
        const json& t = root.at("thermometer");
        reject_unknown(t, "thermometer", {"stride", "tw_max_factor", "tolerance"});
        run.thermometer.stride = number_or(t, "stride", "thermometer", run.thermometer.stride);
        run.thermometer.tw_max_factor = number_or(t, "tw_max_factor", "thermometer", run.thermometer.tw_max_factor);
        run.thermometer.rel_tol = number_or(t, "tolerance", "thermometer", run.thermometer.rel_tol);
    }
    if (root.contains("dynamics")) {
        const json& d = root.at("dynamics");
        reject_unknown(d, "dynamics",
                       {"initial_level", "generator", "t_final", "relaxation_times", "dt", "sample_every"});
        if (d.contains("initial_level")) {
            const double level = number(d, "initial_level", "dynamics");
            if (level != 1.0 && level != 2.0 && level != 3.0) {
                throw ValidationError("dynamics.initial_level: expected 1, 2 or 3");
            }
            run.dynamics.initial_level = static_cast<int>(level);
        }
        if (d.contains("generator")) {
            const json& g = d.at("generator");
            if (g == "partial") {
                run.dynamics.mode = SecularMode::partial;
            } else if (g == "full") {
                run.dynamics.mode = SecularMode::full;
            } else {
                throw ValidationError("dynamics.generator: expected \"partial\" or \"full\"");
            }
        }
        if (d.contains("t_final")) run.dynamics.t_final = number(d, "t_final", "dynamics") * unit;
        run.dynamics.relaxation_times = number_or(d, "relaxation_times", "dynamics", run.dynamics.relaxation_times);
        if (d.contains("dt")) run.dynamics.dt = number(d, "dt", "dynamics") * unit;
        const double every = number_or(d, "sample_every", "dynamics", 1.0);
        if (every < 1.0 || every != static_cast<double>(static_cast<std::size_t>(every))) {
            throw ValidationError("dynamics.sample_every: expected a positive integer");
        }
        run.dynamics.sample_every = static_cast<std::size_t>(every);
    }
    if (root.contains("phase_map")) {
        const json& p = root.at("phase_map");
        reject_unknown(p, "phase_map", {"tw", "g", "valve_tolerance", "step"});
        if (p.contains("tw")) run.phase_map.tw = grid_from(p.at("tw"), SweepVariable::work_temperature, "phase_map.tw", unit);
        if (p.contains("g")) run.phase_map.g = grid_from(p.at("g"), SweepVariable::coupling, "phase_map.g", unit);
        run.phase_map.valve_tolerance = number_or(p, "valve_tolerance", "phase_map", run.phase_map.valve_tolerance);
        run.phase_map.step = number_or(p, "step", "phase_map", run.phase_map.step);
    }
    return run;
}

std::vector<double> split_numbers(std::string_view text, std::size_t expected, std::string_view what) {
    std::vector<double> out;
    std::string token;
    std::istringstream in{std::string(text)};
    while (std::getline(in, token, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != token.size()) throw ValidationError(std::string(what) + ": bad number '" + token + "'");
        out.push_back(v);
    }
    if (out.size() != expected) {
        throw ValidationError(std::string(what) + ": expected " + std::to_string(expected) + " comma-separated values");
    }
    return out;
}

} // namespace

RunConfig parse_run_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(root);
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

Bracket parse_bracket(std::string_view text) {
    const auto v = split_numbers(text, 2, "--bracket");
    Bracket b{v[0], v[1]};
    if (!(b.lo > 0.0 && b.lo < b.hi)) throw ValidationError("--bracket: requires 0 < lo < hi");
    return b;
}

SweepGrid parse_grid(SweepVariable variable, std::string_view text) {
    const auto v = split_numbers(text, 3, "--grid");
    if (v[2] < 2 || v[2] != static_cast<double>(static_cast<std::size_t>(v[2]))) {
        throw ValidationError("--grid: points must be an integer >= 2");
    }
    SweepGrid grid{variable, v[0], v[1], static_cast<std::size_t>(v[2])};
    grid.validate();
    return grid;
}

} // namespace qtherm
