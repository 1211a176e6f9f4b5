// generator.hpp — Liouvillian superoperators for the partial- and full-secular master equations
//
// The master equation is written with the doubled Lindblad convention
//     L_X(ρ) = 2XρX† − X†Xρ − ρX†X
// and, consistently, a doubled unitary part −2i[H_S, ρ] (so that ρ̇23 ∋ +2iΩρ23). The whole
// generator is therefore twice the textbook one: steady states are unaffected and heat
// currents come out in the same doubled units as the closed-form current expressions.
//
// Superoperators act on the column-stacked density matrix, see vec_index().

#pragma once

#include "qtherm/model.hpp"

#include <array>
#include <iosfwd>

namespace qtherm {

enum class SecularMode { partial, full };

std::string_view to_string(SecularMode mode) noexcept;

// Prefactor of −i[H_S, ·] in the generator.
inline constexpr double kUnitaryScale = 2.0;

struct Generator {
    SecularMode mode{SecularMode::partial};
    Basis basis{Basis::eigen};
    Eigen::Vector3d energies{Eigen::Vector3d::Zero()};
    Matrix9cd unitary{Matrix9cd::Zero()};
    std::array<Matrix9cd, 3> dissipators{Matrix9cd::Zero(), Matrix9cd::Zero(), Matrix9cd::Zero()};
    Matrix9cd total{Matrix9cd::Zero()};

    const Matrix9cd& dissipator(BathLabel label) const {
        return dissipators[static_cast<std::size_t>(label)];
    }
};

// Redfield generator under the partial secular approximation, in the eigenbasis {|1>,|2>,|3>}.
// Valid for any g >= 0 (at g = 0 it coincides with the full-secular generator).
Generator build_partial_secular(const DeviceConfig& config);

// Lindblad generator at g = 0 in the bare basis {|1>,|b>,|a>}. Throws ValidationError if g != 0.
Generator build_full_secular(const DeviceConfig& config);

// D_μ(ρ) for one bath. Throws ValidationError if ρ is tagged with a different basis.
Matrix3cd dissipator_apply(const Generator& generator, BathLabel label, const DensityMatrix& rho);

// −i·kUnitaryScale·[H_S, ρ]
Matrix3cd unitary_apply(const Generator& generator, const DensityMatrix& rho);

// Debug dump: header row, then 9 rows of 18 fields (re, im per column), row-major.
void write_generator_csv(std::ostream& out, const Generator& generator);

} // namespace qtherm
