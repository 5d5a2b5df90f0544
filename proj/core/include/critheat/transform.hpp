#pragma once

#include <cstddef>
#include <functional>

#include "critheat/grid.hpp"
#include "critheat/initial_data.hpp"
#include "critheat/params.hpp"

namespace critheat {

/// Radial (or log-frame) field -> Fisher-KPP field: Psi(z) = r^alpha u(r),
/// z = ln r + K t. The image grid is the input grid shifted by K t.
Field to_fisher(const Field& u, const DerivedConstants& c);

/// Inverse map: u(r) = r^(-alpha) Psi(ln r + K t) on the grid shifted by -K t.
Field from_fisher(const Field& psi, const DerivedConstants& c);

/// Psi0(z) = e^(alpha z) u0(e^z) on the traveling grid at t = 0.
/// Throws InvalidArgument if u0 gives a negative or non-finite sample.
Field map_initial(const RadialProfile& u0, const DerivedConstants& c, const Grid1D& z_grid);

/// Controls for the weighted-mass quadrature over (0, inf), truncated to [r_lo, r_hi].
struct QuadratureConfig {
    double r_lo = 1e-8;
    double r_hi = 1e8;
    double tol = 1e-11;
    double divergence_cap = 1e12;
    // an end decade contributing more than this fraction of the total marks divergence
    double tail_fraction = 1e-6;
};

struct WeightedMass {
    double value = 0.0;  // +inf when divergent
    bool divergent = false;
    double first_decade = 0.0;
    double last_decade = 0.0;
};

/// M(u0) = int_0^inf r^(alpha - 1) u0(r) dr.
WeightedMass weighted_mass(const RadialProfile& u0, const DerivedConstants& c,
                           const QuadratureConfig& config = {});

/// int_0^inf u0(r)^q / r dr, with the same truncation and tail rules.
WeightedMass log_power_integral(const RadialProfile& u0, double q,
                                const QuadratureConfig& config = {});

/// Extrema of u0 / reference over n log-spaced samples of [r_lo, r_hi]. These
/// estimate the extrema over (0, inf) only as far as the window allows.
struct RatioExtrema {
    double inf_ratio = 0.0;
    double sup_ratio = 0.0;
    double r_lo = 0.0;
    double r_hi = 0.0;
    std::size_t samples = 0;
};

RatioExtrema ratio_extrema(const RadialProfile& u0, const RadialProfile& reference, double r_lo,
                           double r_hi, std::size_t samples);
/// Reference defaults to U(., 0).
RatioExtrema ratio_extrema(const RadialProfile& u0, const DerivedConstants& c, double r_lo,
                           double r_hi, std::size_t samples);

double sup_norm(const Field& f);
/// Trapezoid rule in the grid coordinate.
double l1_norm(const Field& f);
/// Piecewise-linear; throws InvalidArgument outside the grid.
double interpolate(const Field& f, double x);
/// Index of the largest sample (first one on ties).
std::size_t argmax(const Field& f);

}  // namespace critheat
