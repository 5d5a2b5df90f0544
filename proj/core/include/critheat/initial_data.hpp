#pragma once

#include <functional>
#include <string>
#include <variant>

#include "critheat/params.hpp"

namespace critheat {

/// Radial initial profile r -> u0(r), r > 0.
using RadialProfile = std::function<double(double)>;

/// height * phi((r - center) / width) with the smooth compact bump
/// phi(s) = exp(1 - 1 / (1 - s^2)) on |s| < 1, so phi(0) = 1.
struct BumpDatum {
    double center = 1.0;
    double width = 0.5;
    double height = 1.0;
};

/// lambda * U(r, 0).
struct ScaledUDatum {
    double lambda = 1.0;
};

/// fraction * min(cap, S(r)); fraction in (0, 1) keeps the datum strictly below S.
struct CappedSDatum {
    double cap = 1.0;
    double fraction = 0.5;
};

/// A for r <= r_knee, a C-infinity monotone transition to 0 on (r_knee, 2 r_knee).
struct PlateauDatum {
    double A = 1.0;
    double r_knee = 1.0;
};

/// amplitude * r^(-alpha) * exp(-((ln r - center) / width)^2), i.e. a Gaussian
/// of the given amplitude in the traveling coordinate at t = 0.
struct LogGaussianDatum {
    double amplitude = 1e-3;
    double center = 0.0;
    double width = 1.0;
};

struct ZeroDatum {};

using InitialSpec = std::variant<ZeroDatum, BumpDatum, ScaledUDatum, CappedSDatum, PlateauDatum,
                                 LogGaussianDatum>;

std::string kind_name(const InitialSpec& spec);

/// Smooth compact bump profile with phi(0) = 1, support (-1, 1).
double smooth_bump(double s);
/// Smooth monotone step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x);

/// Builds the profile; throws InvalidArgument for parameters that make no
/// sense (negative heights, K0 <= 0 for S- or U-based data, ...).
RadialProfile make_profile(const InitialSpec& spec, const DerivedConstants& c);

/// Multiplies a profile by a constant.
RadialProfile scaled(RadialProfile u0, double factor);

}  // namespace critheat
