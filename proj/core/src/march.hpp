#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "critheat/error.hpp"
#include "critheat/grid.hpp"
#include "critheat/time_controls.hpp"
#include "power.hpp"

namespace critheat::detail {

// Problem-specific pieces of a time integration. `advance` overwrites the state
// at t with the state at t + dt and must not touch it if it throws.
template <class Advance, class Lipschitz, class BlowupMeasure, class DecayMeasure, class Energy>
struct MarchProblem {
    Grid1D grid;
    Frame frame;
    Advance advance;
    Lipschitz lipschitz;           // reaction Lipschitz scale of a state
    BlowupMeasure blowup_measure;  // compared with blowup_threshold
    DecayMeasure decay_measure;    // compared with decay_threshold
    Energy energy;
};

inline std::size_t first_max(const std::vector<double>& v) {
    return static_cast<std::size_t>(std::distance(v.begin(), std::max_element(v.begin(), v.end())));
}

inline bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

template <class P>
SolveOutcome march(std::vector<double> state, P& problem, const TimeControls& controls) {
    controls.validate();
    SolveOutcome out;
    std::vector<double> snapshot_times = controls.snapshot_times;
    std::sort(snapshot_times.begin(), snapshot_times.end());
    std::size_t next_snapshot = 0;

    const double h = problem.grid.spacing();
    const double diffusion_cap = 0.5 * h * h;
    double t = 0.0;

    auto record = [&](double time, const std::vector<double>& s) {
        out.trace.push_back({time, problem.blowup_measure(s), problem.energy(s)});
    };
    auto emit_snapshots = [&](double t0, const std::vector<double>& s0, double t1,
                              const std::vector<double>& s1) {
        while (next_snapshot < snapshot_times.size() && snapshot_times[next_snapshot] <= t1) {
            const double ts = snapshot_times[next_snapshot];
            const double w = (t1 > t0) ? std::clamp((ts - t0) / (t1 - t0), 0.0, 1.0) : 1.0;
            std::vector<double> v(s1.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                v[i] = std::max(0.0, (1.0 - w) * s0[i] + w * s1[i]);
            }
            out.snapshots.emplace_back(problem.grid, std::move(v), ts, problem.frame);
            ++next_snapshot;
        }
    };
    auto finish = [&](Status status, double time, const std::vector<double>& s) {
        out.status = status;
        out.t_end = time;
        if (out.trace.empty() || out.trace.back().t != time) record(time, s);
        out.final_field.emplace(problem.grid, s, time, problem.frame);
        return out;
    };
    auto blow_up = [&](BlowupCriterion criterion, double time, const std::vector<double>& s) {
        out.criterion = criterion;
        out.x_star = problem.grid.node(first_max(s));
        return finish(Status::BlewUp, time, s);
    };

    emit_snapshots(0.0, state, 0.0, state);
    if (problem.decay_measure(state) <= controls.decay_threshold) {
        return finish(Status::Decayed, 0.0, state);
    }
    if (problem.blowup_measure(state) >= controls.blowup_threshold) {
        return blow_up(BlowupCriterion::Threshold, 0.0, state);
    }
    record(0.0, state);

    std::vector<double> previous;
    while (t < controls.t_max) {
        const double reaction_cap = 1.0 / (problem.lipschitz(state) + 1e-12);
        double dt = controls.dt_safety * std::min(diffusion_cap, reaction_cap);
        dt = std::min(dt, controls.dt_init);
        if (dt < controls.dt_min) {
            if (reaction_cap < diffusion_cap) {
                return blow_up(BlowupCriterion::TimeResolution, t, state);
            }
            throw NumericalError("time step underflow: dt < dt_min");
        }
        const bool last = t + dt >= controls.t_max;
        if (last) dt = controls.t_max - t;

        previous = state;
        problem.advance(state, t, dt);
        const double t_next = last ? controls.t_max : t + dt;
        ++out.steps;

        if (!all_finite(state)) {
            state = previous;
            return blow_up(BlowupCriterion::Overflow, t, state);
        }
        emit_snapshots(t, previous, t_next, state);
        t = t_next;

        if (problem.blowup_measure(state) >= controls.blowup_threshold) {
            return blow_up(BlowupCriterion::Threshold, t, state);
        }
        if (problem.decay_measure(state) <= controls.decay_threshold) {
            return finish(Status::Decayed, t, state);
        }
        if (out.steps % controls.trace_stride == 0) record(t, state);
    }
    return finish(Status::Undetermined, controls.t_max, state);
}

// Clamps rounding-level negatives; throws on anything worse.
inline void clamp_non_negative(std::vector<double>& v) {
    for (double& x : v) {
        if (x < 0.0) {
            if (x < -1e-14) {
                throw NumericalError("integrator produced a negative state");
            }
            x = 0.0;
        }
    }
}

// 1/2 int |f_z|^2 - 1/(p+1) int f^(p+1), trapezoid rule, central differences
// inside and one-sided differences at the two ends.
inline double discrete_energy(const std::vector<double>& f, double h, double p) {
    const std::size_t n = f.size();
    auto gradient = [&](std::size_t i) {
        if (i == 0) return (f[1] - f[0]) / h;
        if (i + 1 == n) return (f[n - 1] - f[n - 2]) / h;
        return (f[i + 1] - f[i - 1]) / (2.0 * h);
    };
    const Power power(p + 1.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = gradient(i);
        const double density = 0.5 * g * g - power(f[i]) / (p + 1.0);
        sum += (i == 0 || i + 1 == n) ? 0.5 * density : density;
    }
    return sum * h;
}

}  // namespace critheat::detail
