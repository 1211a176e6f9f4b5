// model.hpp — Parameter records, validation, and the eigenbasis of the three-level system

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qtherm {

using Matrix3cd = Eigen::Matrix3cd;
using Vector9cd = Eigen::Matrix<std::complex<double>, 9, 1>;
using Matrix9cd = Eigen::Matrix<std::complex<double>, 9, 9>;

// Thrown when a parameter record or density matrix breaks one of its invariants.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical procedure cannot produce an answer (no root, singular solve, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BathLabel { hot = 0, cold = 1, work = 2 };

inline constexpr std::array<BathLabel, 3> kAllBaths{BathLabel::hot, BathLabel::cold, BathLabel::work};

std::string_view to_string(BathLabel label) noexcept;
BathLabel parse_bath_label(std::string_view text);

// Bare Hamiltonian H_S = ωa|a><a| + ωb|b><b| + g(|a><b| + |b><a|), ground level at 0.
struct SystemParams {
    double omega_a{1.0};
    double omega_b{0.8};
    double g{0.0};
};

// Eigen-decomposition of the excited doublet.
//   ω2,3 = (ωa + ωb ∓ Ω)/2,  Ω = sqrt(4g² + Δ²),  φ = atan2(2g, Δ)
//   f1 = sin(φ/2)cos(φ/2),  f2 = cos²(φ/2),  f3 = sin²(φ/2)
// The lower eigenstate is |2> = sin(φ/2)|a> - cos(φ/2)|b>, the upper |3> = cos(φ/2)|a> + sin(φ/2)|b>,
// so that |2> -> -|b> and |3> -> |a> continuously as g -> 0.
struct EigenSystem {
    double omega_2{0.0};
    double omega_3{0.0};
    double delta{0.0};
    double capital_omega{0.0};
    double phi{0.0};
    double f1{0.0};
    double f2{1.0};
    double f3{0.0};
};

struct BathSpec {
    BathLabel label{BathLabel::hot};
    double temperature{1.0};
    double gamma{0.0};
    double cutoff{50.0};
};

struct DeviceConfig {
    SystemParams system;
    std::vector<BathSpec> baths;

    // Throws ValidationError if the label is absent.
    const BathSpec& bath(BathLabel label) const;
    BathSpec& bath(BathLabel label);

    double temperature(BathLabel label) const { return bath(label).temperature; }
};

// Convenience constructor used throughout tests and the CLI: three baths sharing γ and ωc.
DeviceConfig make_device(const SystemParams& system, double t_hot, double t_cold, double t_work,
                         double gamma, double cutoff);

// Returns the config unchanged or throws ValidationError naming the first violated invariant.
const DeviceConfig& validate(const DeviceConfig& config);
void validate(const SystemParams& system);
void validate(const BathSpec& bath);

EigenSystem diagonalize(const SystemParams& system);

enum class Basis {
    eigen, // {|1>, |2>, |3>}
    bare   // {|1>, |b>, |a>}
};

std::string_view to_string(Basis basis) noexcept;

// Diagonal system Hamiltonian in the requested basis (index order as in Basis).
Eigen::Vector3d level_energies(const SystemParams& system, Basis basis);

struct DensityTolerances {
    double hermiticity{1e-12};
    double trace{1e-12};
    double positivity{1e-8};
};

// 3x3 Hermitian, unit-trace state tagged with the basis it is expressed in.
class DensityMatrix {
public:
    // Validates all invariants; throws ValidationError on failure.
    DensityMatrix(Basis basis, const Matrix3cd& matrix, const DensityTolerances& tol = {});

    // Skips validation. Used for intermediate states whose invariants are measured, not enforced.
    static DensityMatrix unchecked(Basis basis, const Matrix3cd& matrix);

    static DensityMatrix pure(Basis basis, int level);
    static DensityMatrix maximally_mixed(Basis basis);

    Basis basis() const noexcept { return basis_; }
    const Matrix3cd& matrix() const noexcept { return matrix_; }
    std::complex<double> operator()(int row, int col) const { return matrix_(row, col); }

    std::complex<double> trace() const { return matrix_.trace(); }
    double min_eigenvalue() const;
    double hermiticity_error() const;

    Vector9cd vectorize() const;
    static Matrix3cd unvectorize(const Vector9cd& v);

private:
    DensityMatrix(Basis basis, const Matrix3cd& matrix, bool /*unchecked*/)
        : basis_(basis), matrix_(matrix) {}

    Basis basis_;
    Matrix3cd matrix_;
};

// Column-stacking index of element (row, col) of a 3x3 matrix.
constexpr int vec_index(int row, int col) noexcept { return row + 3 * col; }

} // namespace qtherm
