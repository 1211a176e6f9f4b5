// rates.cpp — Bath spectral functions and transition rates

#include "qtherm/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace qtherm {

double bose_occupation(double omega, double temperature) {
    if (!(temperature > 0.0)) throw std::domain_error("bose_occupation: temperature must be positive");
    if (!(omega > 0.0)) throw std::domain_error("bose_occupation: frequency must be positive");
    return 1.0 / std::expm1(omega / temperature);
}

double ohmic_spectral_density(double omega, double gamma, double cutoff) {
    return gamma * omega * std::exp(-omega / cutoff);
}

RatePair transition_rates(double omega, const BathSpec& bath) {
    if (!(omega >= 0.0)) throw std::domain_error("transition_rates: negative frequency");
    const double density = ohmic_spectral_density(omega, bath.gamma, bath.cutoff);
    const double t = bath.temperature;
    if (omega <= kSmallFrequency * t) {
        // G(ω)n(ω) = γ e^{-ω/ωc} (T - ω/2 + ω²/(12T) - ...)
        const double x = omega / t;
        const double up = bath.gamma * std::exp(-omega / bath.cutoff) * t * (1.0 - 0.5 * x + x * x / 12.0);
        return {up + density, up};
    }
    const double n = bose_occupation(omega, t);
    return {density * (n + 1.0), density * n};
}

DressedRates dressed_rates(double omega, const BathSpec& bath, const EigenSystem& eig) {
    const RatePair bare = transition_rates(omega, bath);
    const std::array<double, 3> f{eig.f1, eig.f2, eig.f3};
    DressedRates out;
    for (std::size_t i = 0; i < 3; ++i) out.weighted[i] = {f[i] * bare.down, f[i] * bare.up};
    return out;
}

RatePair work_rates(const EigenSystem& eig, const BathSpec& work_bath) {
    if (!(eig.capital_omega > 0.0)) {
        throw std::domain_error("fully degenerate excited levels (omega_a = omega_b, g = 0): work-bath frequency is zero");
    }
    return transition_rates(eig.capital_omega, work_bath);
}

} // namespace qtherm
