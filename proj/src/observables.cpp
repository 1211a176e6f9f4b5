// observables.cpp — Heat currents, effective temperatures, COP and entropy production

#include "qtherm/observables.hpp"

#include "qtherm/rates.hpp"
#include "qtherm/solver.hpp"

#include <algorithm>
#include <cmath>

namespace qtherm {

namespace {

constexpr double kScaleFloor = 1e-300;
constexpr double kCopThreshold = 1e-14;

void require_diagonal(const DensityMatrix& rho, const char* what) {
    const Matrix3cd& m = rho.matrix();
    const double off = (m - Matrix3cd(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    if (off > 1e-10) throw ValidationError(std::string(what) + " expects a diagonal state");
}

void finish_report(CurrentReport& report, const BathTemperatures& temps) {
    const CopBounds bounds = cop_and_bounds(report, temps);
    report.cop = bounds.cop;
    report.carnot_cop = bounds.carnot_cop;
    report.entropy_rate = entropy_production(report, temps);
}

} // namespace

BathTemperatures BathTemperatures::of(const DeviceConfig& config) {
    return {config.temperature(BathLabel::hot), config.temperature(BathLabel::cold),
            config.temperature(BathLabel::work)};
}

double BathTemperatures::of(BathLabel label) const {
    switch (label) {
    case BathLabel::hot: return hot;
    case BathLabel::cold: return cold;
    case BathLabel::work: return work;
    }
    return 0.0;
}

double CurrentReport::current(BathLabel label) const {
    switch (label) {
    case BathLabel::hot: return j_h;
    case BathLabel::cold: return j_c;
    case BathLabel::work: return j_w;
    }
    return 0.0;
}

double CurrentReport::scale() const {
    return std::max({std::abs(j_h), std::abs(j_c), std::abs(j_w), kScaleFloor});
}

double heat_current_trace(const Generator& generator, const DensityMatrix& rho, BathLabel label) {
    const Matrix3cd d = dissipator_apply(generator, label, rho);
    double j = 0.0;
    for (int i = 0; i < 3; ++i) j += generator.energies(i) * d(i, i).real();
    return j;
}

CurrentReport closed_form_currents(const DeviceConfig& config, const DensityMatrix& rho,
                                   CoherenceCoefficients coefficients) {
    validate(config);
    if (rho.basis() != Basis::eigen) throw ValidationError("closed-form currents expect an eigenbasis state");
    const EigenSystem eig = diagonalize(config.system);
    const BathSpec& hot = config.bath(BathLabel::hot);
    const BathSpec& cold = config.bath(BathLabel::cold);

    const std::array<double, 2> omega{eig.omega_2, eig.omega_3};
    const std::array<double, 2> population{rho(1, 1).real(), rho(2, 2).real()};
    const double r11 = rho(0, 0).real();
    const double coherence_sum = 2.0 * rho(1, 2).real();

    // weight index of each bath on the pairs {1,2} and {1,3}
    constexpr std::array<int, 2> cold_weight{2, 3};
    constexpr std::array<int, 2> hot_weight{3, 2};

    CurrentReport report;
    std::array<double, 2> cold_parts{};
    for (int l = 0; l < 2; ++l) {
        const int other = 1 - l;
        const DressedRates c = dressed_rates(omega[l], cold, eig);
        const DressedRates h = dressed_rates(omega[l], hot, eig);
        const double c_cross = dressed_rates(omega[other], cold, eig)[1].down;
        const double h_cross = dressed_rates(omega[other], hot, eig)[1].down;
        const RatePair& cr = c[cold_weight[l]];
        const RatePair& hr = h[hot_weight[l]];
        cold_parts[l] = 2.0 * omega[l] *
                        (cr.up * r11 - cr.down * population[l] + coefficients.cold * c_cross * coherence_sum);
        report.j_h += 2.0 * omega[l] *
                      (hr.up * r11 - hr.down * population[l] + coefficients.hot * h_cross * coherence_sum);
    }
    report.j_c12 = cold_parts[0];
    report.j_c13 = cold_parts[1];
    report.j_c = cold_parts[0] + cold_parts[1];

    const RatePair w = work_rates(eig, config.bath(BathLabel::work));
    report.j_w = 2.0 * eig.capital_omega * (w.up * population[0] - w.down * population[1]);
    report.coherence_abs = std::abs(rho(1, 2));
    finish_report(report, BathTemperatures::of(config));
    return report;
}

CurrentReport uncoupled_currents(const DeviceConfig& config, const DensityMatrix& rho) {
    validate(config);
    if (config.system.g != 0.0) throw ValidationError("uncoupled currents require g=0");
    if (rho.basis() != Basis::bare) throw ValidationError("uncoupled currents expect a bare-basis state");
    require_diagonal(rho, "uncoupled currents");

    const SystemParams& s = config.system;
    const RatePair h = transition_rates(s.omega_a, config.bath(BathLabel::hot));
    const RatePair c = transition_rates(s.omega_b, config.bath(BathLabel::cold));
    const RatePair w = work_rates(diagonalize(s), config.bath(BathLabel::work));
    const double r1 = rho(0, 0).real(), rb = rho(1, 1).real(), ra = rho(2, 2).real();
    const double delta = s.omega_a - s.omega_b;

    CurrentReport report;
    report.j_c = 2.0 * s.omega_b * (c.up * r1 - c.down * rb);
    report.j_h = 2.0 * s.omega_a * (h.up * r1 - h.down * ra);
    report.j_w = 2.0 * delta * (w.up * rb - w.down * ra);
    report.coherence_abs = std::abs(rho(1, 2));
    finish_report(report, BathTemperatures::of(config));
    return report;
}

EffectiveTemperatures effective_temperatures(const DensityMatrix& rho, const SystemParams& system) {
    if (rho.basis() != Basis::bare) throw ValidationError("effective temperatures expect a bare-basis state");
    require_diagonal(rho, "effective temperatures");
    const double r1 = rho(0, 0).real(), rb = rho(1, 1).real(), ra = rho(2, 2).real();
    if (ra >= r1 || rb >= r1) throw NumericalError("negative effective temperature (population inversion)");
    return {system.omega_a / std::log(r1 / ra), system.omega_b / std::log(r1 / rb)};
}

CopBounds cop_and_bounds(const CurrentReport& report, const BathTemperatures& t) {
    CopBounds out;
    out.carnot_cop = (1.0 / t.hot - 1.0 / t.work) / (1.0 / t.cold - 1.0 / t.hot);
    if (std::abs(report.j_w) > kCopThreshold * report.scale()) {
        out.cop = report.j_c / report.j_w;
        out.margin = out.carnot_cop - *out.cop;
    }
    return out;
}

double entropy_production(const CurrentReport& report, const BathTemperatures& t) {
    return report.j_h / t.hot + report.j_c / t.cold + report.j_w / t.work;
}

DeviceState solve_device(const DeviceConfig& config) {
    validate(config);
    const bool coupled = config.system.g != 0.0;
    Generator generator = coupled ? build_partial_secular(config) : build_full_secular(config);
    DensityMatrix rho = steady_state(generator);

    CurrentReport report;
    report.j_h = heat_current_trace(generator, rho, BathLabel::hot);
    report.j_c = heat_current_trace(generator, rho, BathLabel::cold);
    report.j_w = heat_current_trace(generator, rho, BathLabel::work);
    if (coupled) {
        const Matrix3cd d = dissipator_apply(generator, BathLabel::cold, rho);
        report.j_c12 = generator.energies(1) * d(1, 1).real();
        report.j_c13 = generator.energies(2) * d(2, 2).real();
    }
    report.coherence_abs = std::abs(rho(1, 2));
    finish_report(report, BathTemperatures::of(config));
    return {std::move(generator), std::move(rho), report};
}

CurrentReport evaluate_device(const DeviceConfig& config) {
    return solve_device(config).report;
}

} // namespace qtherm
