#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "critheat/closed_forms.hpp"
#include "critheat/grid.hpp"
#include "critheat/initial_data.hpp"
#include "critheat/params.hpp"
#include "critheat/time_controls.hpp"

namespace critheat {

/// Discretization of r^-2 u_t = u_rr + (N-1)/r u_r + r^sigma u^p on
/// [r_lo, r_hi] with n log-uniform nodes. The origin is never a node.
struct RadialConfig {
    double r_lo = std::exp(-40.0);
    double r_hi = std::exp(40.0);
    std::size_t n = 1601;
    TimeControls time;
    BoundaryValue inner = BoundaryValue::zero();  // at r_lo
    BoundaryValue outer = BoundaryValue::zero();  // at r_hi
    // decay is judged on this compact radial window, blow-up on the whole grid
    double observe_r_lo = 1e-2;
    double observe_r_hi = 1e2;

    Grid1D log_grid() const;  // y_i = ln r_i
    void validate() const;
};

/// Integrates u_t = r^2 (u_rr + (N-1)/r u_r) + r^(sigma+2) u^p with three-point
/// central differences in r (non-uniform spacing), implicit in the diffusion
/// and explicit in the source. Snapshots and final field are in the Radial frame.
SolveOutcome solve_radial(const RadialProfile& u0, const DerivedConstants& c,
                          const RadialConfig& config);
SolveOutcome solve_radial(const Field& u0, const DerivedConstants& c, const RadialConfig& config);

/// sup over interior nodes of |r^-2 f_t - f_rr - (N-1)/r f_r - r^sigma f^p|.
/// f_t uses a central difference with step `dt_fd` when `time_dependent`.
double residual(const std::function<double(double, double)>& f, bool time_dependent,
                const DerivedConstants& c, std::span<const double> radii, double t,
                double dt_fd = 1e-6);
double residual(const ClosedForm& form, std::span<const double> radii, double t);
/// Stationary residual of a sampled radial field.
double residual(const Field& u, const DerivedConstants& c);

/// n log-uniform radii on [r_lo, r_hi].
std::vector<double> log_spaced_radii(double r_lo, double r_hi, std::size_t n);

}  // namespace critheat
