#pragma once

#include <optional>
#include <string_view>

#include "critheat/params.hpp"

namespace critheat {

/// 1 - tanh^2(theta) evaluated as 4 / (2 + e^{2 theta} + e^{-2 theta}),
/// which has no cancellation and underflows cleanly to 0 for large |theta|.
double sech_squared(double theta);

/// base^exponent for a base that should be non-negative but may carry rounding
/// noise: bases in [-1e-15, 0) are treated as 0, more negative ones throw.
double clamped_pow(double base, double exponent);

/// Singular stationary solution S(r) = K0^(1/(p-1)) r^(-alpha). Needs K0 > 0.
double eval_S(double r, const DerivedConstants& c);

/// Stationary pulse of the Fisher-KPP equation,
/// [K0(p+1)/2]^(1/(p-1)) [sech^2((p-1) sqrt(K0) z / 2)]^(1/(p-1)). Needs K0 > 0.
double eval_fisher_pulse(double z, const DerivedConstants& c);

/// Eternal solution U(r, t) = r^(-alpha) * pulse(ln r + K t). Needs K0 > 0.
double eval_U(double r, double t, const DerivedConstants& c);

/// Heat kernel of mass `mass`: mass / sqrt(4 pi t) exp(-zeta^2 / 4t).
double eval_gaussian(double zeta, double t, double mass);

enum class Branch { AtZero, AtInfinity };

/// U(r, t) ~ prefactor * r^exponent in the chosen limit.
struct PowerLaw {
    double prefactor = 0.0;
    double exponent = 0.0;
};

PowerLaw asymptote_U(Branch branch, double t, const DerivedConstants& c);

/// Position relative to the moving interface r = e^{-K t}.
enum class Region { Inner, Outer, Interface };

std::string_view to_string(Region region);

Region region_of(double r, double t, const DerivedConstants& c);

/// One of the explicit solutions bundled with its constants, so callers can
/// pass it around as a single (x, t) -> value oracle.
class ClosedForm {
public:
    enum class Kind { SingularStationary, FisherPulse, EternalSolution, GaussianKernel };

    static ClosedForm singular_stationary(const DerivedConstants& c);
    static ClosedForm fisher_pulse(const DerivedConstants& c);
    static ClosedForm eternal(const DerivedConstants& c);
    static ClosedForm gaussian(double mass);

    Kind kind() const noexcept { return kind_; }
    const DerivedConstants& constants() const noexcept { return constants_; }
    std::optional<double> mass() const noexcept { return mass_; }
    bool time_dependent() const noexcept;

    // x is r for S and U, z for the pulse, zeta for the Gaussian.
    double operator()(double x, double t) const;

private:
    ClosedForm(Kind kind, DerivedConstants c, std::optional<double> mass)
        : kind_(kind), constants_(c), mass_(mass) {}

    Kind kind_;
    DerivedConstants constants_;
    std::optional<double> mass_;
};

}  // namespace critheat
