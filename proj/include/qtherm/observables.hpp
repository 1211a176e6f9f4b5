// observables.hpp — Steady-state heat currents and thermodynamic figures of merit
//
// Sign convention: a positive current flows from the bath into the system.

#pragma once

#include "qtherm/generator.hpp"

#include <optional>

namespace qtherm {

struct BathTemperatures {
    double hot{1.0};
    double cold{1.0};
    double work{1.0};

    static BathTemperatures of(const DeviceConfig& config);
    double of(BathLabel label) const;
};

struct CurrentReport {
    double j_h{0.0};
    double j_c{0.0};
    double j_w{0.0};
    std::optional<double> j_c12; // cold current through the 1-2 pair (coupled case)
    std::optional<double> j_c13; // cold current through the 1-3 pair (coupled case)
    double coherence_abs{0.0};
    std::optional<double> cop;
    double carnot_cop{0.0};
    double entropy_rate{0.0};

    double current(BathLabel label) const;
    // max(|j_h|, |j_c|, |j_w|), floored at 1e-300; used for relative tolerances.
    double scale() const;
};

// Tr[H_S D_μ(ρ)] with H_S in the generator's basis.
double heat_current_trace(const Generator& generator, const DensityMatrix& rho, BathLabel label);

// Weights of the (ρ23 + ρ32) terms in the closed-form cold and hot currents,
//   J_c = Σ_l 2ω_l [ ... + cold · Γ⁺_c1(ω_l̄)(ρ23+ρ32) ],
//   J_h = Σ_l 2ω_l [ ... + hot  · Γ⁺_h1(ω_l̄)(ρ23+ρ32) ].
struct CoherenceCoefficients {
    double cold;
    double hot;
};

// Coefficients as commonly printed for this device (+1, −2). They do not conserve energy at
// finite coherence; kept for comparison.
inline constexpr CoherenceCoefficients kPrintedCoherenceCoefficients{1.0, -2.0};
// Coefficients implied by the generator's population equations (+1/2, −1/2); these reproduce
// heat_current_trace exactly.
inline constexpr CoherenceCoefficients kTraceCoherenceCoefficients{0.5, -0.5};

// Closed-form currents for an eigenbasis steady state. Fills j_c12/j_c13, coherence, COP, bounds.
CurrentReport closed_form_currents(const DeviceConfig& config, const DensityMatrix& rho,
                                   CoherenceCoefficients coefficients);

// g = 0 currents from a bare-basis diagonal state.
CurrentReport uncoupled_currents(const DeviceConfig& config, const DensityMatrix& rho);

struct EffectiveTemperatures {
    double t_a;
    double t_b;
};

// T_s = ω_s / ln(ρ11/ρss) on a bare-basis state; throws NumericalError on population inversion.
EffectiveTemperatures effective_temperatures(const DensityMatrix& rho, const SystemParams& system);

struct CopBounds {
    std::optional<double> cop; // undefined when |J_w| <= 1e-14 · scale
    double carnot_cop;
    std::optional<double> margin; // carnot_cop − cop
};

CopBounds cop_and_bounds(const CurrentReport& report, const BathTemperatures& temperatures);

// Σ_μ J_μ / T_μ; non-positive at any steady state.
double entropy_production(const CurrentReport& report, const BathTemperatures& temperatures);

// Steady state of the device plus its trace-formula current report. Uses the full-secular
// generator at g = 0 and the partial-secular generator otherwise.
struct DeviceState {
    Generator generator;
    DensityMatrix rho;
    CurrentReport report;
};

DeviceState solve_device(const DeviceConfig& config);
CurrentReport evaluate_device(const DeviceConfig& config);

} // namespace qtherm
