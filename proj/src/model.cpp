// model.cpp — Parameter validation, eigenbasis decomposition, density matrices

#include "qtherm/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qtherm {

std::string_view to_string(BathLabel label) noexcept {
    switch (label) {
    case BathLabel::hot: return "h";
    case BathLabel::cold: return "c";
    case BathLabel::work: return "w";
    }
    return "?";
}

BathLabel parse_bath_label(std::string_view text) {
    if (text == "h") return BathLabel::hot;
    if (text == "c") return BathLabel::cold;
    if (text == "w") return BathLabel::work;
    throw ValidationError("unknown bath label '" + std::string(text) + "' (expected h, c or w)");
}

std::string_view to_string(Basis basis) noexcept {
    return basis == Basis::eigen ? "eigen" : "bare";
}

const BathSpec& DeviceConfig::bath(BathLabel label) const {
    auto it = std::find_if(baths.begin(), baths.end(), [&](const BathSpec& b) { return b.label == label; });
    if (it == baths.end()) {
        throw ValidationError("missing bath label " + std::string(to_string(label)));
    }
    return *it;
}

BathSpec& DeviceConfig::bath(BathLabel label) {
    return const_cast<BathSpec&>(std::as_const(*this).bath(label));
}

DeviceConfig make_device(const SystemParams& system, double t_hot, double t_cold, double t_work,
                         double gamma, double cutoff) {
    DeviceConfig config;
    config.system = system;
    config.baths = {
        {BathLabel::hot, t_hot, gamma, cutoff},
        {BathLabel::cold, t_cold, gamma, cutoff},
        {BathLabel::work, t_work, gamma, cutoff},
    };
    return config;
}

void validate(const SystemParams& s) {
    if (!(s.omega_a > 0.0)) throw ValidationError("omega_a must be positive");
    if (!(s.omega_b > 0.0)) throw ValidationError("omega_b must be positive");
    if (!(s.omega_a >= s.omega_b)) throw ValidationError("level ordering violated: omega_b > omega_a");
    if (!(s.g >= 0.0)) throw ValidationError("inner coupling g must be non-negative");
}

void validate(const BathSpec& b) {
    const std::string name(to_string(b.label));
    if (!(b.temperature > 0.0)) throw ValidationError("bath " + name + ": temperature must be positive");
    if (!(b.gamma >= 0.0)) throw ValidationError("bath " + name + ": gamma must be non-negative");
    if (!(b.cutoff > 0.0)) throw ValidationError("bath " + name + ": cutoff must be positive");
}

const DeviceConfig& validate(const DeviceConfig& config) {
    validate(config.system);
    if (config.baths.size() != 3) {
        throw ValidationError("expected exactly three baths, got " + std::to_string(config.baths.size()));
    }
    std::array<int, 3> seen{};
    for (const auto& b : config.baths) {
        if (++seen[static_cast<int>(b.label)] > 1) {
            throw ValidationError("duplicate bath label " + std::string(to_string(b.label)));
        }
    }
    for (BathLabel label : kAllBaths) {
        if (seen[static_cast<int>(label)] == 0) {
            throw ValidationError("missing bath label " + std::string(to_string(label)));
        }
    }
    for (const auto& b : config.baths) validate(b);
    return config;
}

EigenSystem diagonalize(const SystemParams& s) {
    EigenSystem e;
    e.delta = s.omega_a - s.omega_b;
    e.capital_omega = std::hypot(2.0 * s.g, e.delta);
    const double mean = s.omega_a + s.omega_b;
    e.omega_2 = 0.5 * (mean - e.capital_omega);
    e.omega_3 = 0.5 * (mean + e.capital_omega);
    e.phi = std::atan2(2.0 * s.g, e.delta);
    const double c = std::cos(0.5 * e.phi);
    const double sn = std::sin(0.5 * e.phi);
    e.f1 = sn * c;
    e.f2 = c * c;
    e.f3 = sn * sn;
    return e;
}

Eigen::Vector3d level_energies(const SystemParams& system, Basis basis) {
    if (basis == Basis::bare) return {0.0, system.omega_b, system.omega_a};
    const EigenSystem e = diagonalize(system);
    return {0.0, e.omega_2, e.omega_3};
}

DensityMatrix::DensityMatrix(Basis basis, const Matrix3cd& matrix, const DensityTolerances& tol)
    : basis_(basis), matrix_(matrix) {
    if (hermiticity_error() > tol.hermiticity) {
        throw ValidationError("density matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - 1.0) > tol.trace) {
        throw ValidationError("density matrix trace differs from 1");
    }
    if (min_eigenvalue() < -tol.positivity) {
        throw ValidationError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::unchecked(Basis basis, const Matrix3cd& matrix) {
    return DensityMatrix(basis, matrix, true);
}

DensityMatrix DensityMatrix::pure(Basis basis, int level) {
    if (level < 0 || level > 2) throw ValidationError("pure state level index must be 0, 1 or 2");
    Matrix3cd m = Matrix3cd::Zero();
    m(level, level) = 1.0;
    return DensityMatrix(basis, m);
}

DensityMatrix DensityMatrix::maximally_mixed(Basis basis) {
    return DensityMatrix(basis, Matrix3cd::Identity() / 3.0);
}

double DensityMatrix::hermiticity_error() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    const Matrix3cd herm = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix3cd> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Vector9cd DensityMatrix::vectorize() const {
    return Eigen::Map<const Vector9cd>(matrix_.data());
}

Matrix3cd DensityMatrix::unvectorize(const Vector9cd& v) {
    return Eigen::Map<const Matrix3cd>(v.data());
}

} // namespace qtherm
