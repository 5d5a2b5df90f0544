#include "critheat/time_controls.hpp"

#include <cmath>
#include <limits>

#include "critheat/error.hpp"

namespace critheat {

BoundaryValue BoundaryValue::zero() {
    return BoundaryValue([](double) { return 0.0; }, "zero", true);
}

BoundaryValue BoundaryValue::constant(double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw InvalidArgument("boundary value must be finite and non-negative");
    }
    if (value == 0.0) return zero();
    return BoundaryValue([value](double) { return value; }, "constant", false);
}

BoundaryValue BoundaryValue::function(std::function<double(double)> value_at, std::string label) {
    return BoundaryValue(std::move(value_at), std::move(label), false);
}

BoundaryValue BoundaryValue::homogeneous_ode(double y0, double K0, double p) {
    if (!(y0 >= 0.0)) {
        throw InvalidArgument("boundary ODE needs y0 >= 0");
    }
    if (y0 == 0.0) return zero();
    return BoundaryValue([=](double t) { return homogeneous_ode_solution(y0, t, K0, p); },
                         "homogeneous_ode", false);
}

double homogeneous_ode_solution(double y0, double t, double K0, double p) {
    if (y0 <= 0.0) return 0.0;
    // v = y^(1-p) solves v' = (p-1)(K0 v - 1)
    const double v0 = std::pow(y0, 1.0 - p);
    double v;
    if (K0 == 0.0) {
        v = v0 - (p - 1.0) * t;
    } else {
        v = 1.0 / K0 + (v0 - 1.0 / K0) * std::exp((p - 1.0) * K0 * t);
    }
    if (!(v > 0.0)) return std::numeric_limits<double>::infinity();
    return std::pow(v, -1.0 / (p - 1.0));
}

void TimeControls::validate() const {
    if (!(dt_init > 0.0)) throw InvalidArgument("dt_init must be positive");
    if (!(dt_safety > 0.0 && dt_safety <= 1.0)) throw InvalidArgument("dt_safety must lie in (0, 1]");
    if (!(t_max > 0.0)) throw InvalidArgument("t_max must be positive");
    if (!(decay_threshold > 0.0) || !(blowup_threshold > 1.0) || !(decay_threshold < 1.0)) {
        throw InvalidArgument("thresholds must satisfy blowup_threshold > 1 > decay_threshold > 0");
    }
    if (!(dt_min > 0.0)) throw InvalidArgument("dt_min must be positive");
    if (trace_stride == 0) throw InvalidArgument("trace_stride must be at least 1");
    for (double s : snapshot_times) {
        if (!(s >= 0.0 && s <= t_max)) {
            throw InvalidArgument("snapshot times must lie in [0, t_max]");
        }
    }
}

std::string_view to_string(Status status) {
    switch (status) {
        case Status::Decayed: return "Decayed";
        case Status::BlewUp: return "BlewUp";
        case Status::Undetermined: return "Undetermined";
    }
    return "unknown";
}

std::string_view to_string(BlowupCriterion criterion) {
    switch (criterion) {
        case BlowupCriterion::Threshold: return "threshold";
        case BlowupCriterion::TimeResolution: return "time_resolution";
        case BlowupCriterion::Overflow: return "overflow";
    }
    return "unknown";
}

}  // namespace critheat
