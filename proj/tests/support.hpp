// support.hpp — Shared fixtures for the unit and acceptance tests: named parameter sets and a
// seeded random configuration generator

#pragma once

#include "qtherm/model.hpp"

#include <cstdint>
#include <random>

namespace qtherm::testing {

inline constexpr std::uint64_t kSeed = 20240611;

// ωb/ωa = 0.8, γ = 0.008, ωc = 50, Th = 1, Tc = 0.85 (valve and refrigerator working points)
inline DeviceConfig valve_device(double g, double t_work) {
    return make_device({1.0, 0.8, g}, 1.0, 0.85, t_work, 0.008, 50.0);
}

// ωb/ωa = 0.95, Th = 1, Tc = 0.1, γ = 0.008, ωc = 50 (coherence-versus-coupling scan)
inline DeviceConfig coherence_device(double g, double t_work) {
    return make_device({1.0, 0.95, g}, 1.0, 0.1, t_work, 0.008, 50.0);
}

// ξ = 0.6, Th = 1: the thermometer working points
inline DeviceConfig thermometer_device(double t_cold, double t_work = 1.0) {
    return make_device({1.0, 0.6, 0.0}, 1.0, t_cold, t_work, 0.008, 50.0);
}

// Random valid device: ωb ∈ [0.3, 0.95], g ∈ [0, g_max], T ∈ [0.1, 5], γ ∈ [0.001, 0.02], ωc ∈ [20, 80].
class RandomDevices {
public:
    explicit RandomDevices(std::uint64_t seed = kSeed) : rng_(seed) {}

    DeviceConfig next(double g_max) {
        const double omega_b = uniform(0.3, 0.95);
        const double g = g_max > 0.0 ? uniform(0.0, g_max) : 0.0;
        DeviceConfig c;
        c.system = {1.0, omega_b, g};
        for (BathLabel label : kAllBaths) {
            c.baths.push_back({label, uniform(0.1, 5.0), uniform(0.001, 0.02), uniform(20.0, 80.0)});
        }
        return c;
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

} // namespace qtherm::testing
