// solver.hpp — Steady states, time evolution and the analytic g = 0 steady state

#pragma once

#include "qtherm/generator.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace qtherm {

// Unit-trace null vector of the generator. The ρ11 row of L is replaced by the trace
// constraint and the 9x9 system solved directly (with iterative refinement).
// Throws NumericalError if the null space of L is not one-dimensional.
DensityMatrix steady_state(const Generator& generator);

// Slowest relaxation time: 1 / (smallest nonzero |Re λ|) over the spectrum of L.
double relaxation_time(const Generator& generator);

// 0.01 / max(all transition rates, Ω, ω3).
double default_time_step(const DeviceConfig& config);

struct TrajectorySample {
    double time;
    DensityMatrix rho;
    double min_eigenvalue;
    double trace;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double step{0.0};
    SecularMode mode{SecularMode::partial};
};

// Fixed-step RK4 on vec(ρ̇) = L vec(ρ). Every `sample_every`-th step (and the final one) is stored
// after symmetrizing ρ; the trace is never renormalized. Throws NumericalError if the trace drifts
// by more than 1e-6 or the state blows up.
Trajectory evolve(const Generator& generator, const DensityMatrix& rho0, double t_final, double dt,
                  std::size_t sample_every = 1);

// Closed-form diagonal steady state (bare basis) of the g = 0 master equation.
DensityMatrix analytic_diagonal_steady_state(const DeviceConfig& config);

// Gain minus loss for levels 1, b, a of the g = 0 rate equations.
std::array<double, 3> detailed_balance_residual(const DeviceConfig& config, const DensityMatrix& rho);

// Columns: t, re/im of ρ entries in row-major order, min_eigenvalue, trace.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

} // namespace qtherm
