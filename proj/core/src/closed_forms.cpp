#include "critheat/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "critheat/error.hpp"

namespace critheat {
namespace {

void require_absorption(const DerivedConstants& c) {
    if (!(c.K0 > 0.0)) {
        throw InvalidArgument("closed form requires K0 > 0");
    }
}

void require_radius(double r) {
    if (!(r > 0.0)) {
        throw InvalidArgument("radius must be positive");
    }
}

// [K0 (p + 1) / 2]^(1/(p-1))
double pulse_peak(const DerivedConstants& c) {
    const double p = c.params.p;
    return std::pow(c.K0 * (p + 1.0) / 2.0, 1.0 / (p - 1.0));
}

double pulse_rate(const DerivedConstants& c) {
    return (c.params.p - 1.0) * std::sqrt(c.K0) / 2.0;
}

}  // namespace

double sech_squared(double theta) {
    const double a = std::abs(theta);
    if (a > 354.0) return 0.0;
    const double e = std::exp(2.0 * a);
    return 4.0 / (2.0 + e + 1.0 / e);
}

double clamped_pow(double base, double exponent) {
    if (base < 0.0) {
        if (base < -1e-15) {
            throw NumericalError("negative base in fractional power");
        }
        base = 0.0;
    }
    return std::pow(base, exponent);
}

double eval_S(double r, const DerivedConstants& c) {
    require_absorption(c);
    require_radius(r);
    return c.steady_level() * std::pow(r, -c.alpha);
}

double eval_fisher_pulse(double z, const DerivedConstants& c) {
    require_absorption(c);
    const double p = c.params.p;
    return pulse_peak(c) * clamped_pow(sech_squared(pulse_rate(c) * z), 1.0 / (p - 1.0));
}

double eval_U(double r, double t, const DerivedConstants& c) {
    require_absorption(c);
    require_radius(r);
    return std::pow(r, -c.alpha) * eval_fisher_pulse(std::log(r) + c.K * t, c);
}

double eval_gaussian(double zeta, double t, double mass) {
    if (!(t > 0.0)) {
        throw InvalidArgument("Gaussian kernel requires t > 0");
    }
    return mass / std::sqrt(4.0 * std::numbers::pi * t) * std::exp(-zeta * zeta / (4.0 * t));
}

PowerLaw asymptote_U(Branch branch, double t, const DerivedConstants& c) {
    require_absorption(c);
    const double p = c.params.p;
    const double root = std::sqrt(c.K0);
    const double amplitude = std::pow(2.0 * c.K0 * (p + 1.0), 1.0 / (p - 1.0));
    if (branch == Branch::AtZero) {
        return {amplitude * std::exp(root * c.K * t), root - c.alpha};
    }
    return {amplitude * std::exp(-root * c.K * t), -root - c.alpha};
}

std::string_view to_string(Region region) {
    switch (region) {
        case Region::Inner: return "inner";
        case Region::Outer: return "outer";
        case Region::Interface: return "interface";
    }
    return "unknown";
}

Region region_of(double r, double t, const DerivedConstants& c) {
    const double boundary = std::exp(-c.K * t);
    if (std::abs(r - boundary) <= 1e-12 * boundary) return Region::Interface;
    return r < boundary ? Region::Inner : Region::Outer;
}

ClosedForm ClosedForm::singular_stationary(const DerivedConstants& c) {
    require_absorption(c);
    return {Kind::SingularStationary, c, std::nullopt};
}

ClosedForm ClosedForm::fisher_pulse(const DerivedConstants& c) {
    require_absorption(c);
    return {Kind::FisherPulse, c, std::nullopt};
}

ClosedForm ClosedForm::eternal(const DerivedConstants& c) {
    require_absorption(c);
    return {Kind::EternalSolution, c, std::nullopt};
}

ClosedForm ClosedForm::gaussian(double mass) {
    if (!std::isfinite(mass) || !(mass > 0.0)) {
        throw InvalidArgument("Gaussian kernel requires a finite positive mass");
    }
    return {Kind::GaussianKernel, DerivedConstants{}, mass};
}

bool ClosedForm::time_dependent() const noexcept {
    return kind_ == Kind::EternalSolution || kind_ == Kind::GaussianKernel;
}

double ClosedForm::operator()(double x, double t) const {
    switch (kind_) {
        case Kind::SingularStationary: return eval_S(x, constants_);
        case Kind::FisherPulse: return eval_fisher_pulse(x, constants_);
        case Kind::EternalSolution: return eval_U(x, t, constants_);
        case Kind::GaussianKernel: return eval_gaussian(x, t, *mass_);
    }
    return 0.0;
}

}  // namespace critheat
