#pragma once

#include "critheat/grid.hpp"
#include "critheat/params.hpp"
#include "critheat/time_controls.hpp"

namespace critheat {

/// Discretization of Psi_t = Psi_zz - K0 Psi + Psi^p on a truncated line.
struct SolverConfig {
    Grid1D grid{-40.0, 40.0, 1601};
    TimeControls time;
    BoundaryValue left = BoundaryValue::zero();
    BoundaryValue right = BoundaryValue::zero();
};

/// Largest step allowed for a state with the given sup norm:
/// dt_safety * min(h^2/2, 1/(|K0| + p sup^(p-1))), further capped by dt_init.
double stable_dt(double sup, const DerivedConstants& c, const SolverConfig& config);

/// One IMEX step: backward Euler for Psi_zz (tridiagonal solve), forward Euler
/// for -K0 Psi + Psi^p, boundary nodes set to the Dirichlet data at t + dt.
/// Throws NumericalError if the result is not finite.
Field step(const Field& psi, double dt, const DerivedConstants& c, const SolverConfig& config);

/// Integrates with adaptive dt until blow-up, decay, or t_max.
SolveOutcome solve(const Field& psi0, const DerivedConstants& c, const SolverConfig& config);

/// E[Psi] = 1/2 int |Psi_z|^2 dz - 1/(p+1) int Psi^(p+1) dz.
double energy(const Field& psi, const DerivedConstants& c);

}  // namespace critheat
