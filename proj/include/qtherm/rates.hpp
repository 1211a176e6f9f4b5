// rates.hpp — Ohmic spectral density, Bose-Einstein occupation and bath transition rates

#pragma once

#include "qtherm/model.hpp"

#include <array>

namespace qtherm {

// Below omega < kSmallFrequency * T the rates use the series expansion of G(ω)n(ω).
inline constexpr double kSmallFrequency = 1e-6;

struct RatePair {
    double down{0.0}; // Γ⁺(ω) = G(ω)[n(ω)+1], emission into the bath
    double up{0.0};   // Γ⁻(ω) = G(ω)n(ω), absorption from the bath
};

// n(ω) = 1/(exp(ω/T) - 1). Requires ω > 0 and T > 0 (std::domain_error otherwise).
double bose_occupation(double omega, double temperature);

// G(ω) = γ ω exp(-ω/ωc)
double ohmic_spectral_density(double omega, double gamma, double cutoff);

// Requires ω >= 0 (std::domain_error otherwise). At ω -> 0 both rates tend to γT.
RatePair transition_rates(double omega, const BathSpec& bath);

// Γ±_{μl}(ω) = f_l Γ±_μ(ω); element l-1 holds weight f_l.
struct DressedRates {
    std::array<RatePair, 3> weighted;

    const RatePair& operator[](int l) const { return weighted.at(static_cast<std::size_t>(l - 1)); }
};

DressedRates dressed_rates(double omega, const BathSpec& bath, const EigenSystem& eig);

// Work-bath rates at the doublet splitting Ω. A fully degenerate doublet (Ω = 0) has no
// well-defined transition frequency and is rejected with std::domain_error.
RatePair work_rates(const EigenSystem& eig, const BathSpec& work_bath);

} // namespace qtherm
