#pragma once

#include <functional>

namespace critheat {

/// Adaptive Simpson on [a, b]. The interval is first cut into `panels` equal
/// pieces so narrow features are not skipped by the initial five samples.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40, int panels = 8);

/// Integral of f over [lo, hi] (0 < lo < hi) split into decades, with the
/// contributions of the first and last decade kept for tail checks.
struct DecadeIntegral {
    double total = 0.0;
    double first_decade = 0.0;
    double last_decade = 0.0;
    bool capped = false;  // a partial sum exceeded the divergence cap
};

DecadeIntegral integrate_by_decades(const std::function<double(double)>& f, double lo,
                                    double hi, double tol, double divergence_cap,
                                    int panels_per_decade = 64);

}  // namespace critheat
