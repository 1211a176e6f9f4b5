// solver.cpp — Steady-state solve, RK4 propagation, analytic diagonal steady state

#include "qtherm/solver.hpp"

#include "qtherm/rates.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace qtherm {

namespace {

using cld = std::complex<long double>;
using Vector9cld = Eigen::Matrix<cld, 9, 1>;
using Matrix9cld = Eigen::Matrix<cld, 9, 9>;

constexpr int kTraceRow = vec_index(0, 0);
constexpr double kRankThreshold = 1e-12;
constexpr double kMaxTraceDrift = 1e-6;

double inf_norm(const Matrix9cd& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

Matrix3cd hermitian_part(const Matrix3cd& m) {
    return 0.5 * (m + m.adjoint());
}

} // namespace

DensityMatrix steady_state(const Generator& generator) {
    const Matrix9cd& L = generator.total;

    Eigen::FullPivLU<Matrix9cd> rank_check(L);
    rank_check.setThreshold(kRankThreshold);
    if (rank_check.rank() != 8) {
        throw NumericalError("degenerate steady state: generator null space has dimension " +
                             std::to_string(9 - rank_check.rank()));
    }

    Matrix9cd A = L;
    A.row(kTraceRow).setZero();
    for (int i = 0; i < 3; ++i) A(kTraceRow, vec_index(i, i)) = 1.0;
    Vector9cd b = Vector9cd::Zero();
    b(kTraceRow) = 1.0;

    Eigen::FullPivLU<Matrix9cd> lu(A);
    if (!lu.isInvertible()) throw NumericalError("steady-state system is singular");
    Vector9cd x = lu.solve(b);

    // Residuals in extended precision keep the small population rows accurate.
    const Matrix9cld A_ext = A.cast<cld>();
    const Vector9cld b_ext = b.cast<cld>();
    for (int iter = 0; iter < 3; ++iter) {
        const Vector9cld r = b_ext - A_ext * x.cast<cld>();
        x += lu.solve(r.cast<std::complex<double>>());
    }

    const double residual = (L * x).cwiseAbs().maxCoeff();
    if (residual > 1e-12 * inf_norm(L)) {
        std::ostringstream msg;
        msg << "steady-state residual " << residual << " exceeds tolerance";
        throw NumericalError(msg.str());
    }
    return DensityMatrix(generator.basis, hermitian_part(DensityMatrix::unvectorize(x)));
}

double relaxation_time(const Generator& generator) {
    Eigen::ComplexEigenSolver<Matrix9cd> solver(generator.total, false);
    const double scale = inf_norm(generator.total);
    double slowest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 9; ++i) {
        const double rate = std::abs(solver.eigenvalues()(i).real());
        if (rate > 1e-10 * scale) slowest = std::min(slowest, rate);
    }
    if (!std::isfinite(slowest)) throw NumericalError("generator has no decaying modes");
    return 1.0 / slowest;
}

double default_time_step(const DeviceConfig& config) {
    validate(config);
    const EigenSystem eig = diagonalize(config.system);
    double fastest = std::max(eig.capital_omega, eig.omega_3);
    auto include = [&](const RatePair& r) { fastest = std::max({fastest, r.down, r.up}); };
    for (BathLabel label : {BathLabel::hot, BathLabel::cold}) {
        include(transition_rates(eig.omega_2, config.bath(label)));
        include(transition_rates(eig.omega_3, config.bath(label)));
    }
    include(transition_rates(eig.capital_omega, config.bath(BathLabel::work)));
    return 0.01 / fastest;
}

Trajectory evolve(const Generator& generator, const DensityMatrix& rho0, double t_final, double dt,
                  std::size_t sample_every) {
    if (rho0.basis() != generator.basis) throw ValidationError("initial state basis does not match generator basis");
    if (!(dt > 0.0)) throw ValidationError("time step must be positive");
    if (!(t_final >= 0.0)) throw ValidationError("final time must be non-negative");
    if (sample_every == 0) throw ValidationError("sample_every must be at least 1");

    // One RK4 step of a linear system is the degree-4 Taylor polynomial of exp(dt L).
    const Matrix9cd hL = dt * generator.total;
    const Matrix9cd hL2 = hL * hL;
    const Matrix9cd step = Matrix9cd::Identity() + hL + hL2 / 2.0 + hL2 * hL / 6.0 + hL2 * hL2 / 24.0;

    Trajectory traj;
    traj.step = dt;
    traj.mode = generator.mode;

    auto store = [&](double t, const Vector9cd& v) {
        const Matrix3cd m = hermitian_part(DensityMatrix::unvectorize(v));
        const double trace = m.trace().real();
        if (!(std::abs(trace - 1.0) <= kMaxTraceDrift) || !(m.cwiseAbs().maxCoeff() <= 1.0 + kMaxTraceDrift)) {
            std::ostringstream msg;
            msg << "step size too large (trace drift at t=" << t << "); try dt <= " << 0.5 * dt;
            throw NumericalError(msg.str());
        }
        DensityMatrix rho = DensityMatrix::unchecked(generator.basis, m);
        const double min_eig = rho.min_eigenvalue();
        traj.samples.push_back({t, std::move(rho), min_eig, trace});
    };

    const auto n_steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
    Vector9cd v = rho0.vectorize();
    store(0.0, v);
    for (std::size_t k = 1; k <= n_steps; ++k) {
        v = step * v;
        if (k % sample_every == 0 || k == n_steps) store(static_cast<double>(k) * dt, v);
    }
    return traj;
}

DensityMatrix analytic_diagonal_steady_state(const DeviceConfig& config) {
    validate(config);
    if (config.system.g != 0.0) throw ValidationError("analytic diagonal steady state requires g=0");
    const SystemParams& s = config.system;
    const RatePair h = transition_rates(s.omega_a, config.bath(BathLabel::hot));
    const RatePair c = transition_rates(s.omega_b, config.bath(BathLabel::cold));
    const RatePair w = work_rates(diagonalize(s), config.bath(BathLabel::work));

    const double p1 = c.down * (h.down + w.down) + h.down * w.up;
    const double pb = c.up * (h.down + w.down) + h.up * w.down;
    const double pa = h.up * (c.down + w.up) + c.up * w.up;
    const double norm = h.down * c.down + c.down * w.down + h.down * w.up + h.down * c.up + c.up * w.down +
                        h.up * w.down + h.up * c.down + c.up * w.up + h.up * w.up;

    Matrix3cd m = Matrix3cd::Zero();
    m(0, 0) = p1 / norm;
    m(1, 1) = pb / norm;
    m(2, 2) = pa / norm;
    return DensityMatrix(Basis::bare, m);
}

std::array<double, 3> detailed_balance_residual(const DeviceConfig& config, const DensityMatrix& rho) {
    validate(config);
    if (config.system.g != 0.0) throw ValidationError("detailed balance residual requires g=0");
    if (rho.basis() != Basis::bare) throw ValidationError("detailed balance residual expects a bare-basis state");
    const Matrix3cd& m = rho.matrix();
    const double off = (m - Matrix3cd(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    if (off > 1e-10) throw ValidationError("detailed balance residual expects a diagonal state");

    const SystemParams& s = config.system;
    const RatePair h = transition_rates(s.omega_a, config.bath(BathLabel::hot));
    const RatePair c = transition_rates(s.omega_b, config.bath(BathLabel::cold));
    const RatePair w = work_rates(diagonalize(s), config.bath(BathLabel::work));
    const double r1 = m(0, 0).real(), rb = m(1, 1).real(), ra = m(2, 2).real();

    return {
        c.down * rb + h.down * ra - (c.up + h.up) * r1,
        c.up * r1 + w.down * ra - (w.up + c.down) * rb,
        h.up * r1 + w.up * rb - (h.down + w.down) * ra,
    };
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << "t";
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) out << ",re_rho" << i << j << ",im_rho" << i << j;
    }
    out << ",min_eigenvalue,trace\n";
    out << std::setprecision(17);
    for (const auto& s : trajectory.samples) {
        out << s.time;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) out << ',' << s.rho(i, j).real() << ',' << s.rho(i, j).imag();
        }
        out << ',' << s.min_eigenvalue << ',' << s.trace << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

} // namespace qtherm
