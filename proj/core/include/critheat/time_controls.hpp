#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "critheat/grid.hpp"

namespace critheat {

/// Dirichlet data at one end of the computational box, possibly time dependent.
class BoundaryValue {
public:
    static BoundaryValue zero();
    static BoundaryValue constant(double value);
    static BoundaryValue function(std::function<double(double)> value_at, std::string label);
    /// Spatially homogeneous solution y' = -K0 y + y^p, y(0) = y0, i.e. the
    /// far-field value of data that are asymptotically constant.
    static BoundaryValue homogeneous_ode(double y0, double K0, double p);

    double at(double t) const { return value_at_(t); }
    bool is_zero() const noexcept { return zero_; }
    const std::string& label() const noexcept { return label_; }

private:
    BoundaryValue(std::function<double(double)> f, std::string label, bool zero)
        : value_at_(std::move(f)), label_(std::move(label)), zero_(zero) {}

    std::function<double(double)> value_at_;
    std::string label_;
    bool zero_ = false;
};

/// Closed-form solution of y' = -K0 y + y^p, y(0) = y0 >= 0; +inf past blow-up.
double homogeneous_ode_solution(double y0, double t, double K0, double p);

/// Time-step and termination controls shared by both integrators.
struct TimeControls {
    double dt_init = 1e-3;  // first step and upper bound on every step
    double dt_safety = 0.5;
    double t_max = 10.0;
    double blowup_threshold = 1e8;
    double decay_threshold = 1e-8;
    double dt_min = 1e-15;
    std::vector<double> snapshot_times;
    std::size_t trace_stride = 10;  // record every k-th step (and the last one)

    void validate() const;
};

enum class Status { Decayed, BlewUp, Undetermined };

std::string_view to_string(Status status);

/// How a blow-up was recognised.
enum class BlowupCriterion {
    Threshold,       // sup crossed blowup_threshold
    TimeResolution,  // the reaction time scale fell below dt_min
    Overflow,        // the state became non-finite
};

std::string_view to_string(BlowupCriterion criterion);

struct TracePoint {
    double t = 0.0;
    double sup = 0.0;
    double energy = 0.0;
};

struct SolveOutcome {
    Status status = Status::Undetermined;
    // t_reached for Decayed, t_star for BlewUp, t_max for Undetermined
    double t_end = 0.0;
    // grid coordinate of the maximum at t_star (z, or y = ln r for radial runs)
    std::optional<double> x_star;
    std::optional<BlowupCriterion> criterion;
    std::vector<Field> snapshots;
    std::vector<TracePoint> trace;
    std::optional<Field> final_field;  // last finite state
    std::size_t steps = 0;
};

}  // namespace critheat
