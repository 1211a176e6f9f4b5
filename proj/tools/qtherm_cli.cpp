// qtherm_cli.cpp — Command-line front end: sweeps, valves, refrigerator, amplifier, thermometer, dynamics

#include "qtherm/config.hpp"
#include "qtherm/csv.hpp"
#include "qtherm/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace qtherm;

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct Options {
    std::string config_path;
    std::string out_path;
    unsigned threads{1};
    std::string bracket;
    std::string grid;
    std::string g_grid;
    std::string variable{"Tw"};
    std::optional<double> tolerance;
    std::string current;
    std::string mode{"partial"};
    std::optional<int> level;
};

// Either the --out file or stdout. The one-line summary always goes to stderr so that
// stdout stays a clean CSV stream.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ValidationError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void summary(const std::string& line) { std::cerr << line << '\n'; }

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Command-line brackets and grids are given in the same absolute units as the config file.
Bracket scaled(Bracket b, double unit) { return {b.lo / unit, b.hi / unit}; }

SweepGrid scaled(SweepGrid g, double unit) {
    g.start /= unit;
    g.stop /= unit;
    return g;
}

Bracket require_bracket(const Options& opt, const std::optional<Bracket>& from_config, double unit) {
    if (!opt.bracket.empty()) return scaled(parse_bracket(opt.bracket), unit);
    if (from_config) return *from_config;
    throw ValidationError("a Tw bracket is required (--bracket lo,hi or the config block)");
}

std::optional<SweepGrid> optional_grid(const std::string& text, SweepVariable variable,
                                       const std::optional<SweepGrid>& from_config, double unit) {
    if (!text.empty()) return scaled(parse_grid(variable, text), unit);
    return from_config;
}

int run_sweep(const Options& opt, const RunConfig& run) {
    std::optional<SweepGrid> tw = run.sweep.tw;
    std::optional<SweepGrid> g = run.sweep.g;
    if (!opt.grid.empty()) {
        const SweepVariable variable = parse_sweep_variable(opt.variable);
        (variable == SweepVariable::work_temperature ? tw : g) = scaled(parse_grid(variable, opt.grid), run.omega_a_unit);
    }
    if (!tw && !g) throw ValidationError("sweep needs a Tw or g grid (--grid or sweep block)");
    const SweepGrid& inner = tw ? *tw : *g;
    const std::optional<SweepGrid> outer = (tw && g) ? g : std::nullopt;

    const auto rows = sweep(run.device, inner, outer, opt.threads);
    Output out(opt.out_path);
    csv::write_sweep(out.stream(), rows);

    std::size_t failed = 0;
    double best_coherence = 0.0;
    for (const auto& row : rows) {
        if (!row.report) {
            ++failed;
        } else {
            best_coherence = std::max(best_coherence, row.report->coherence_abs);
        }
    }
    summary("sweep: " + std::to_string(rows.size()) + " points, " + std::to_string(failed) +
            " failed, max |rho23| = " + fmt(best_coherence));
    return failed == 0 ? 0 : kExitNumerical;
}

int run_valve(const Options& opt, const RunConfig& run) {
    const BathLabel which = opt.current.empty() ? run.valve.current : parse_bath_label(opt.current);
    const Bracket bracket = require_bracket(opt, run.valve.bracket, run.omega_a_unit);
    const double tol = opt.tolerance.value_or(run.valve.tolerance);

    const double tw_star = find_current_zero(run.device, which, bracket, tol);
    const DeviceConfig at_root = with_value(run.device, SweepVariable::work_temperature, tw_star);
    const CurrentReport report = evaluate_device(at_root);

    Output out(opt.out_path);
    out.stream() << "current," << csv::kReportHeader << '\n'
                 << to_string(which) << ',' << csv::report_row(tw_star, at_root.system.g, report) << '\n';
    summary("valve: J_" + std::string(to_string(which)) + " = 0 at Tw = " + fmt(tw_star));
    return 0;
}

int run_refrigerator(const Options& opt, const RunConfig& run) {
    const Bracket bracket = require_bracket(opt, run.refrigerator.bracket, run.omega_a_unit);
    const double tol = opt.tolerance.value_or(1e-10);
    const double onset = find_current_zero(run.device, BathLabel::cold, bracket, tol);

    std::vector<SweepRow> rows;
    const auto grid = optional_grid(opt.grid, SweepVariable::work_temperature, run.refrigerator.grid, run.omega_a_unit);
    if (grid) {
        rows = sweep(run.device, *grid, std::nullopt, opt.threads);
    } else {
        const DeviceConfig at_onset = with_value(run.device, SweepVariable::work_temperature, onset);
        rows.push_back({onset, at_onset.system.g, evaluate_device(at_onset), {}});
    }

    Output out(opt.out_path);
    out.stream() << csv::kReportHeader << ",cop_margin,heat_function\n";
    std::size_t failed = 0;
    for (const auto& row : rows) {
        if (!row.report) {
            ++failed;
            out.stream() << csv::number(row.t_work) << ',' << csv::number(row.g)
                         << ",error,error,error,error,error,error,error,error,error,error,error\n";
            continue;
        }
        const CopBounds bounds = cop_and_bounds(*row.report, BathTemperatures::of(with_value(
                                                                 run.device, SweepVariable::work_temperature, row.t_work)));
        out.stream() << csv::report_row(row.t_work, row.g, *row.report) << ',' << csv::number(bounds.margin) << ','
                     << to_string(classify_heat(*row.report)) << '\n';
    }
    summary("refrigerator: cooling onset (J_c = 0) at Tw = " + fmt(onset));
    return failed == 0 ? 0 : kExitNumerical;
}

int run_amplifier(const Options& opt, const RunConfig& run) {
    const auto grid = optional_grid(opt.grid, SweepVariable::work_temperature, run.amplifier.grid, run.omega_a_unit);
    if (!grid) throw ValidationError("amplifier needs a Tw grid (--grid or amplifier block)");
    const double step = opt.tolerance.value_or(run.amplifier.step);
    const std::vector<double> tws = grid->values();

    Output out(opt.out_path);
    out.stream() << "Tw,g,alpha_J,alpha_J_half_step,j_c,heat_function,amplifier_function\n";
    std::size_t amplifying = 0;
    for (double tw : tws) {
        out.stream() << csv::number(tw) << ',' << csv::number(run.device.system.g) << ',';
        try {
            const DeviceConfig c = with_value(run.device, SweepVariable::work_temperature, tw);
            const double alpha = amplification_factor(c, tw, step);
            const double alpha_half = amplification_factor(c, tw, 0.5 * step);
            const CurrentReport report = evaluate_device(c);
            if (alpha > 1.0) ++amplifying;
            out.stream() << csv::number(alpha) << ',' << csv::number(alpha_half) << ',' << csv::number(report.j_c)
                         << ',' << to_string(classify_heat(report)) << ','
                         << to_string(alpha > 1.0 ? AmplifierFunction::amplifier : AmplifierFunction::contraction)
                         << '\n';
        } catch (const NumericalError&) {
            out.stream() << ",,,," << to_string(AmplifierFunction::undefined) << '\n';
        }
    }
    summary("amplifier: alpha_J > 1 at " + std::to_string(amplifying) + " of " + std::to_string(tws.size()) +
            " points");
    return 0;
}

int run_thermometer(const Options& opt, const RunConfig& run) {
    ThermometerOptions options = run.thermometer;
    if (opt.tolerance) options.rel_tol = *opt.tolerance;
    const ThermometerReading reading = measure_temperature(run.device, options);

    Output out(opt.out_path);
    out.stream() << "Th,xi,Tw_star,Tc_estimate,sensitivity,in_range\n"
                 << csv::number(run.device.temperature(BathLabel::hot)) << ','
                 << csv::number(run.device.system.omega_b / run.device.system.omega_a) << ','
                 << csv::number(reading.tw_star) << ',' << csv::number(reading.tc_estimate) << ','
                 << csv::number(reading.sensitivity) << ',' << (reading.in_range ? "true" : "false") << '\n';
    summary("thermometer: Tw* = " + fmt(reading.tw_star) + ", Tc = " + fmt(reading.tc_estimate) +
            ", alpha_T = " + fmt(reading.sensitivity));
    return 0;
}

SecularMode parse_mode(const std::string& text) {
    if (text == "partial") return SecularMode::partial;
    if (text == "full") return SecularMode::full;
    throw ValidationError("unknown generator '" + text + "' (expected partial or full)");
}

Generator build(const DeviceConfig& config, SecularMode mode) {
    return mode == SecularMode::partial ? build_partial_secular(config) : build_full_secular(config);
}

int run_dynamics(const Options& opt, const RunConfig& run, bool mode_given) {
    const SecularMode mode = mode_given ? parse_mode(opt.mode) : run.dynamics.mode;
    const int level = opt.level.value_or(run.dynamics.initial_level);
    if (level < 1 || level > 3) throw ValidationError("initial level must be 1, 2 or 3");

    const Generator gen = build(run.device, mode);
    const double t_final = run.dynamics.t_final.value_or(run.dynamics.relaxation_times * relaxation_time(gen));
    const double dt = run.dynamics.dt.value_or(default_time_step(run.device));
    const Trajectory traj =
        evolve(gen, DensityMatrix::pure(gen.basis, level - 1), t_final, dt, run.dynamics.sample_every);

    Output out(opt.out_path);
    write_trajectory_csv(out.stream(), traj);
    double min_eig = traj.samples.front().min_eigenvalue;
    for (const auto& s : traj.samples) min_eig = std::min(min_eig, s.min_eigenvalue);
    summary("dynamics: " + std::to_string(traj.samples.size()) + " samples to t = " + fmt(t_final) +
            ", min eigenvalue = " + fmt(min_eig));
    return 0;
}

int run_phase_map(const Options& opt, const RunConfig& run) {
    const auto tw = optional_grid(opt.grid, SweepVariable::work_temperature, run.phase_map.tw, run.omega_a_unit);
    const auto g = optional_grid(opt.g_grid, SweepVariable::coupling, run.phase_map.g, run.omega_a_unit);
    if (!tw || !g) throw ValidationError("phase-map needs both a Tw grid and a g grid");

    PhaseMapOptions options;
    options.valve_tol = opt.tolerance.value_or(run.phase_map.valve_tolerance);
    options.fd_step = run.phase_map.step;
    options.threads = opt.threads;
    const auto rows = phase_map(run.device, *tw, *g, options);

    Output out(opt.out_path);
    csv::write_phase_map(out.stream(), rows);
    std::size_t counts[3] = {0, 0, 0};
    std::size_t failed = 0;
    for (const auto& row : rows) {
        if (!row.report) {
            ++failed;
        } else {
            ++counts[static_cast<int>(row.heat)];
        }
    }
    summary("phase-map: " + std::to_string(rows.size()) + " points: " + std::to_string(counts[0]) + " heater, " +
            std::to_string(counts[1]) + " valve, " + std::to_string(counts[2]) + " refrigerator, " +
            std::to_string(failed) + " failed");
    return 0;
}

int run_generator(const Options& opt, const RunConfig& run) {
    const Generator gen = build(run.device, parse_mode(opt.mode));
    Output out(opt.out_path);
    write_generator_csv(out.stream(), gen);
    summary("generator: " + std::string(to_string(gen.mode)) + " secular, " + std::string(to_string(gen.basis)) +
            " basis");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qtherm — steady states and heat currents of a three-level quantum thermal device"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    app.add_option("--out", opt.out_path, "CSV output file (default: stdout)");
    app.add_option("--threads", opt.threads, "worker threads for grid evaluations")->check(CLI::Range(1u, 1024u));

    auto* sweep_cmd = app.add_subcommand("sweep", "heat currents over a Tw or g grid");
    sweep_cmd->add_option("--grid", opt.grid, "start,stop,points");
    sweep_cmd->add_option("--variable", opt.variable, "grid variable for --grid: Tw or g");

    auto* valve_cmd = app.add_subcommand("valve", "Tw at which one heat current vanishes");
    valve_cmd->add_option("--current", opt.current, "h, c or w");
    valve_cmd->add_option("--bracket", opt.bracket, "lo,hi");
    valve_cmd->add_option("--tolerance", opt.tolerance, "relative bisection tolerance in Tw");

    auto* fridge_cmd = app.add_subcommand("refrigerator", "cooling onset and COP versus Carnot");
    fridge_cmd->add_option("--bracket", opt.bracket, "lo,hi for the J_c = 0 onset");
    fridge_cmd->add_option("--grid", opt.grid, "start,stop,points in Tw");
    fridge_cmd->add_option("--tolerance", opt.tolerance, "relative bisection tolerance in Tw");

    auto* amp_cmd = app.add_subcommand("amplifier", "amplification factor |dJc/dJw| over a Tw grid");
    amp_cmd->add_option("--grid", opt.grid, "start,stop,points in Tw");
    amp_cmd->add_option("--tolerance", opt.tolerance, "relative finite-difference step");

    auto* thermo_cmd = app.add_subcommand("thermometer", "infer the cold-bath temperature from the J_h = 0 point");
    thermo_cmd->add_option("--tolerance", opt.tolerance, "relative bisection tolerance in Tw");

    auto* dyn_cmd = app.add_subcommand("dynamics", "RK4 trajectory from a pure level");
    auto* mode_opt = dyn_cmd->add_option("--generator", opt.mode, "partial or full");
    dyn_cmd->add_option("--level", opt.level, "initial level 1, 2 or 3");

    auto* map_cmd = app.add_subcommand("phase-map", "heat-function and amplifier classification over (Tw, g)");
    map_cmd->add_option("--grid", opt.grid, "start,stop,points in Tw");
    map_cmd->add_option("--g-grid", opt.g_grid, "start,stop,points in g");
    map_cmd->add_option("--tolerance", opt.tolerance, "relative valve tolerance on J_c");

    auto* gen_cmd = app.add_subcommand("generator", "dump the 9x9 generator");
    gen_cmd->add_option("--generator", opt.mode, "partial or full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        const RunConfig run = load_run_config(opt.config_path);
        if (sweep_cmd->parsed()) return run_sweep(opt, run);
        if (valve_cmd->parsed()) return run_valve(opt, run);
        if (fridge_cmd->parsed()) return run_refrigerator(opt, run);
        if (amp_cmd->parsed()) return run_amplifier(opt, run);
        if (thermo_cmd->parsed()) return run_thermometer(opt, run);
        if (dyn_cmd->parsed()) return run_dynamics(opt, run, mode_opt->count() > 0);
        if (map_cmd->parsed()) return run_phase_map(opt, run);
        if (gen_cmd->parsed()) return run_generator(opt, run);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
