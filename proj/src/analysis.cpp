// analysis.cpp — Valve points, thermometer protocol, amplification factor, sweeps and phase maps

#include "qtherm/analysis.hpp"

#include "parallel.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qtherm {

namespace {

double current_at(const DeviceConfig& config, BathLabel which, double t_work) {
    return evaluate_device(with_value(config, SweepVariable::work_temperature, t_work)).current(which);
}

} // namespace

double find_current_zero(const DeviceConfig& config, BathLabel which, Bracket bracket, double rel_tol) {
    validate(config);
    if (!(bracket.lo > 0.0 && bracket.lo < bracket.hi)) {
        throw ValidationError("bracket must satisfy 0 < lo < hi");
    }
    auto f = [&](double tw) { return current_at(config, which, tw); };
    const double f_lo = f(bracket.lo);
    const double f_hi = f(bracket.hi);
    if (f_lo == 0.0) return bracket.lo;
    if (f_hi == 0.0) return bracket.hi;
    if (std::signbit(f_lo) == std::signbit(f_hi)) {
        std::ostringstream msg;
        msg << "no working point in bracket [" << bracket.lo << ", " << bracket.hi << "] for J_" << to_string(which);
        throw NumericalError(msg.str());
    }
    auto tol = [rel_tol](double a, double b) { return std::abs(b - a) <= rel_tol * std::abs(b); };
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::bisect(f, bracket.lo, bracket.hi, tol, max_iter);
    return 0.5 * (a + b);
}

double equilibrium_tw(double omega_a, double omega_b, double t_hot, double t_cold) {
    const double denom = omega_a / t_hot - omega_b / t_cold;
    if (!(denom > 0.0)) throw std::domain_error("no equilibrium control temperature (Tc <= xi*Th)");
    return (omega_a - omega_b) / denom;
}

double tc_from_tw(double t_work, double t_hot, double xi) {
    const double denom = t_work - (1.0 - xi) * t_hot;
    if (!(denom > 0.0)) throw std::domain_error("tc_from_tw: requires Tw > (1 - xi) Th");
    return t_hot * t_work * xi / denom;
}

double sensitivity(double t_cold, double t_hot, double xi) {
    const double gap = t_cold - xi * t_hot;
    if (!(gap > 0.0)) throw std::domain_error("sensitivity: requires Tc > xi*Th");
    return xi * (1.0 - xi) * t_hot * t_hot / (gap * gap);
}

double critical_tc(double alpha, double t_hot, double xi) {
    if (!(alpha > 0.0)) throw std::domain_error("critical_tc: sensitivity threshold must be positive");
    return xi * t_hot + std::sqrt(xi * (1.0 - xi) * t_hot * t_hot / alpha);
}

ThermometerReading measure_temperature(const DeviceConfig& config, const ThermometerOptions& options) {
    validate(config);
    if (config.system.g != 0.0) throw ValidationError("thermometer protocol requires g=0");
    if (!(options.stride > 1.0)) throw ValidationError("thermometer scan stride must exceed 1");

    const double t_hot = config.temperature(BathLabel::hot);
    const double xi = config.system.omega_b / config.system.omega_a;
    const double tw_max = options.tw_max_factor * t_hot;

    double lo = t_hot;
    double j_lo = current_at(config, BathLabel::hot, lo);
    double tw_star = std::numeric_limits<double>::quiet_NaN();
    for (double hi = lo * options.stride; hi <= tw_max * (1.0 + 1e-12); hi *= options.stride) {
        const double j_hi = current_at(config, BathLabel::hot, hi);
        if (lo == t_hot && std::abs(j_lo) <= 1e-12 * std::abs(j_hi)) {
            tw_star = t_hot; // already in equilibrium at Tw = Th
            break;
        }
        if (std::signbit(j_lo) != std::signbit(j_hi)) {
            tw_star = find_current_zero(config, BathLabel::hot, {lo, hi}, options.rel_tol);
            break;
        }
        lo = hi;
        j_lo = j_hi;
    }
    if (std::isnan(tw_star)) {
        throw NumericalError("sample below measurable range: no J_h = 0 point below Tw = " + std::to_string(tw_max));
    }

    ThermometerReading reading;
    reading.tw_star = tw_star;
    reading.tc_estimate = tc_from_tw(tw_star, t_hot, xi);
    reading.in_range = reading.tc_estimate > xi * t_hot;
    reading.sensitivity = reading.in_range ? sensitivity(reading.tc_estimate, t_hot, xi)
                                           : std::numeric_limits<double>::infinity();
    return reading;
}

double amplification_factor(const DeviceConfig& config, double t_work, double step) {
    validate(config);
    const double h = step * std::max(1.0, t_work);
    if (!(t_work - h > 0.0)) throw ValidationError("finite-difference step too large for this Tw");
    const CurrentReport up = evaluate_device(with_value(config, SweepVariable::work_temperature, t_work + h));
    const CurrentReport down = evaluate_device(with_value(config, SweepVariable::work_temperature, t_work - h));
    const double d_jc = up.j_c - down.j_c;
    const double d_jw = up.j_w - down.j_w;
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(up.j_w), std::abs(down.j_w));
    if (!(std::abs(d_jw) > floor)) throw NumericalError("amplifier factor undefined here (dJ_w below noise floor)");
    return std::abs(d_jc / d_jw);
}

std::string_view to_string(SweepVariable variable) noexcept {
    return variable == SweepVariable::work_temperature ? "Tw" : "g";
}

SweepVariable parse_sweep_variable(std::string_view text) {
    if (text == "Tw" || text == "tw") return SweepVariable::work_temperature;
    if (text == "g") return SweepVariable::coupling;
    throw ValidationError("unknown sweep variable '" + std::string(text) + "' (expected Tw or g)");
}

void SweepGrid::validate() const {
    if (!(start < stop)) throw ValidationError("sweep grid requires start < stop");
    if (points < 2) throw ValidationError("sweep grid requires at least 2 points");
}

std::vector<double> SweepGrid::values() const {
    validate();
    std::vector<double> out(points);
    const double span = stop - start;
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = start + span * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    out.back() = stop;
    return out;
}

DeviceConfig with_value(const DeviceConfig& config, SweepVariable variable, double value) {
    DeviceConfig out = config;
    if (variable == SweepVariable::work_temperature) {
        out.bath(BathLabel::work).temperature = value;
    } else {
        out.system.g = value;
    }
    return out;
}

namespace {

std::vector<DeviceConfig> expand(const DeviceConfig& config, const SweepGrid& inner,
                                 const std::optional<SweepGrid>& outer) {
    std::vector<DeviceConfig> points;
    const std::vector<double> inner_values = inner.values();
    if (!outer) {
        for (double v : inner_values) points.push_back(with_value(config, inner.variable, v));
        return points;
    }
    if (outer->variable == inner.variable) throw ValidationError("nested sweep needs two different variables");
    for (double o : outer->values()) {
        const DeviceConfig base = with_value(config, outer->variable, o);
        for (double v : inner_values) points.push_back(with_value(base, inner.variable, v));
    }
    return points;
}

} // namespace

std::vector<SweepRow> sweep(const DeviceConfig& config, const SweepGrid& inner, const std::optional<SweepGrid>& outer,
                            unsigned threads) {
    validate(config);
    const std::vector<DeviceConfig> points = expand(config, inner, outer);
    std::vector<SweepRow> rows(points.size());
    detail::parallel_for(points.size(), threads, [&](std::size_t i) {
        const DeviceConfig& c = points[i];
        SweepRow& row = rows[i];
        row.t_work = c.temperature(BathLabel::work);
        row.g = c.system.g;
        try {
            row.report = evaluate_device(c);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });
    return rows;
}

std::string_view to_string(HeatFunction f) noexcept {
    switch (f) {
    case HeatFunction::heater: return "heater";
    case HeatFunction::valve: return "valve";
    case HeatFunction::refrigerator: return "refrigerator";
    }
    return "?";
}

std::string_view to_string(AmplifierFunction f) noexcept {
    switch (f) {
    case AmplifierFunction::amplifier: return "amplifier";
    case AmplifierFunction::contraction: return "contraction";
    case AmplifierFunction::undefined: return "undefined";
    }
    return "?";
}

HeatFunction classify_heat(const CurrentReport& report, double valve_tol) {
    if (std::abs(report.j_c) < valve_tol * report.scale()) return HeatFunction::valve;
    return report.j_c > 0.0 ? HeatFunction::refrigerator : HeatFunction::heater;
}

std::vector<PhaseMapRow> phase_map(const DeviceConfig& config, const SweepGrid& tw_grid, const SweepGrid& g_grid,
                                   const PhaseMapOptions& options) {
    validate(config);
    if (tw_grid.variable != SweepVariable::work_temperature || g_grid.variable != SweepVariable::coupling) {
        throw ValidationError("phase map needs a Tw grid and a g grid");
    }
    const std::vector<DeviceConfig> points = expand(config, tw_grid, g_grid);
    std::vector<PhaseMapRow> rows(points.size());
    detail::parallel_for(points.size(), options.threads, [&](std::size_t i) {
        const DeviceConfig& c = points[i];
        PhaseMapRow& row = rows[i];
        row.t_work = c.temperature(BathLabel::work);
        row.g = c.system.g;
        try {
            row.report = evaluate_device(c);
            row.heat = classify_heat(*row.report, options.valve_tol);
        } catch (const std::exception& e) {
            row.error = e.what();
            return;
        }
        try {
            row.alpha_j = amplification_factor(c, row.t_work, options.fd_step);
            row.amplifier = *row.alpha_j > 1.0 ? AmplifierFunction::amplifier : AmplifierFunction::contraction;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });
    return rows;
}

} // namespace qtherm
