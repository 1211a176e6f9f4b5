// generator.cpp — Assembly of the partial- and full-secular Liouvillians

#include "qtherm/generator.hpp"

#include "qtherm/rates.hpp"

#include <iomanip>
#include <ostream>

namespace qtherm {

namespace {

using cd = std::complex<double>;

// rate · L_X with X = |to><from|:
//   ρ̇[to,to] += 2 rate ρ[from,from],  row and column `from` decay at `rate`.
void add_jump(Matrix9cd& L, double rate, int to, int from) {
    L(vec_index(to, to), vec_index(from, from)) += 2.0 * rate;
    for (int k = 0; k < 3; ++k) {
        L(vec_index(from, k), vec_index(from, k)) -= rate;
        L(vec_index(k, from), vec_index(k, from)) -= rate;
    }
}

// Emission and absorption on the pair {|lower>, |upper>}.
void add_channel(Matrix9cd& L, const RatePair& rates, int lower, int upper) {
    add_jump(L, rates.down, lower, upper);
    add_jump(L, rates.up, upper, lower);
}

Matrix9cd unitary_superoperator(const Eigen::Vector3d& energies) {
    Matrix9cd L = Matrix9cd::Zero();
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            L(vec_index(j, k), vec_index(j, k)) = cd(0.0, -kUnitaryScale * (energies(j) - energies(k)));
        }
    }
    return L;
}

// Slow interference terms between the 1-2 and 1-3 channels of one bath, restricted to the
// population + ρ23/ρ32 block. `sign` is the product of the two channel amplitudes' signs
// (+1 for the hot bath, −1 for the cold bath).
void add_interference(Matrix9cd& L, double sign, const EigenSystem& eig, const RatePair& at_w2,
                      const RatePair& at_w3) {
    const double p3 = sign * eig.f1 * at_w3.down;
    const double p2 = sign * eig.f1 * at_w2.down;
    const double m = sign * eig.f1 * (at_w3.up + at_w2.up);

    const int r11 = vec_index(0, 0), r22 = vec_index(1, 1), r33 = vec_index(2, 2);
    const int r23 = vec_index(1, 2), r32 = vec_index(2, 1);

    for (int coh : {r23, r32}) {
        L(r11, coh) += p3 + p2;
        L(r22, coh) -= p3;
        L(r33, coh) -= p2;
        L(coh, r11) += m;
        L(coh, r22) -= p2;
        L(coh, r33) -= p3;
    }
}

void finish(Generator& gen) {
    gen.unitary = unitary_superoperator(gen.energies);
    gen.total = gen.unitary;
    for (const auto& d : gen.dissipators) gen.total += d;
}

} // namespace

std::string_view to_string(SecularMode mode) noexcept {
    return mode == SecularMode::partial ? "partial_secular" : "full_secular";
}

Generator build_partial_secular(const DeviceConfig& config) {
    validate(config);
    const EigenSystem eig = diagonalize(config.system);

    Generator gen;
    gen.mode = SecularMode::partial;
    gen.basis = Basis::eigen;
    gen.energies = {0.0, eig.omega_2, eig.omega_3};

    // |a> = sin(φ/2)|2> + cos(φ/2)|3>,  |b> = −cos(φ/2)|2> + sin(φ/2)|3>:
    // the hot bath reaches |3> with weight f2 and |2> with f3, the cold bath the reverse.
    struct Coupling {
        BathLabel label;
        int weight_to_2;
        int weight_to_3;
        double interference_sign;
    };
    constexpr std::array<Coupling, 2> couplings{{
        {BathLabel::hot, 3, 2, +1.0},
        {BathLabel::cold, 2, 3, -1.0},
    }};
    for (const auto& c : couplings) {
        const BathSpec& bath = config.bath(c.label);
        const DressedRates at_w2 = dressed_rates(eig.omega_2, bath, eig);
        const DressedRates at_w3 = dressed_rates(eig.omega_3, bath, eig);
        Matrix9cd& D = gen.dissipators[static_cast<std::size_t>(c.label)];
        add_channel(D, at_w2[c.weight_to_2], 0, 1);
        add_channel(D, at_w3[c.weight_to_3], 0, 2);
        add_interference(D, c.interference_sign, eig, transition_rates(eig.omega_2, bath),
                         transition_rates(eig.omega_3, bath));
    }
    add_channel(gen.dissipators[static_cast<std::size_t>(BathLabel::work)],
                work_rates(eig, config.bath(BathLabel::work)), 1, 2);

    finish(gen);
    return gen;
}

Generator build_full_secular(const DeviceConfig& config) {
    validate(config);
    if (config.system.g != 0.0) throw ValidationError("full secular generator requires g=0");
    const SystemParams& s = config.system;
    const EigenSystem eig = diagonalize(s);

    Generator gen;
    gen.mode = SecularMode::full;
    gen.basis = Basis::bare;
    gen.energies = level_energies(s, Basis::bare);

    // bare indices: 0 = |1>, 1 = |b>, 2 = |a>
    add_channel(gen.dissipators[static_cast<std::size_t>(BathLabel::hot)],
                transition_rates(s.omega_a, config.bath(BathLabel::hot)), 0, 2);
    add_channel(gen.dissipators[static_cast<std::size_t>(BathLabel::cold)],
                transition_rates(s.omega_b, config.bath(BathLabel::cold)), 0, 1);
    add_channel(gen.dissipators[static_cast<std::size_t>(BathLabel::work)],
                work_rates(eig, config.bath(BathLabel::work)), 1, 2);

    finish(gen);
    return gen;
}

Matrix3cd dissipator_apply(const Generator& generator, BathLabel label, const DensityMatrix& rho) {
    if (rho.basis() != generator.basis) {
        throw ValidationError("density matrix basis (" + std::string(to_string(rho.basis())) +
                              ") does not match generator basis (" + std::string(to_string(generator.basis)) + ")");
    }
    return DensityMatrix::unvectorize(generator.dissipator(label) * rho.vectorize());
}

Matrix3cd unitary_apply(const Generator& generator, const DensityMatrix& rho) {
    if (rho.basis() != generator.basis) throw ValidationError("density matrix basis does not match generator basis");
    return DensityMatrix::unvectorize(generator.unitary * rho.vectorize());
}

void write_generator_csv(std::ostream& out, const Generator& generator) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(17);
    for (int col = 0; col < 9; ++col) {
        out << (col ? "," : "") << "re_" << col << ",im_" << col;
    }
    out << '\n';
    for (int row = 0; row < 9; ++row) {
        for (int col = 0; col < 9; ++col) {
            const cd v = generator.total(row, col);
            out << (col ? "," : "") << v.real() << ',' << v.imag();
        }
        out << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

} // namespace qtherm
