#include "critheat/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "critheat/closed_forms.hpp"
#include "critheat/error.hpp"
#include "critheat/quadrature.hpp"

namespace critheat {

Field to_fisher(const Field& u, const DerivedConstants& c) {
    if (u.frame == Frame::Traveling) {
        throw InvalidArgument("to_fisher expects a radial or log-frame field");
    }
    std::vector<double> psi(u.values);
    if (u.frame == Frame::Radial) {
        for (std::size_t i = 0; i < psi.size(); ++i) {
            psi[i] *= std::exp(c.alpha * u.grid.node(i));
        }
    }
    return Field(u.grid.shifted(c.K * u.t), std::move(psi), u.t, Frame::Traveling);
}

Field from_fisher(const Field& psi, const DerivedConstants& c) {
    if (psi.frame != Frame::Traveling) {
        throw InvalidArgument("from_fisher expects a traveling-frame field");
    }
    const Grid1D y_grid = psi.grid.shifted(-c.K * psi.t);
    std::vector<double> u(psi.values);
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] *= std::exp(-c.alpha * y_grid.node(i));
    }
    return Field(y_grid, std::move(u), psi.t, Frame::Radial);
}

Field map_initial(const RadialProfile& u0, const DerivedConstants& c, const Grid1D& z_grid) {
    std::vector<double> psi(z_grid.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double z = z_grid.node(i);
        const double value = u0(std::exp(z));
        if (!std::isfinite(value) || value < 0.0) {
            throw InvalidArgument("initial profile must be finite and non-negative");
        }
        psi[i] = value == 0.0 ? 0.0 : std::exp(c.alpha * z) * value;
        if (!std::isfinite(psi[i])) {
            throw InvalidArgument("mapped initial datum is not finite");
        }
    }
    return Field(z_grid, std::move(psi), 0.0, Frame::Traveling);
}

namespace {

WeightedMass finish(const DecadeIntegral& d, const QuadratureConfig& config) {
    WeightedMass m;
    m.first_decade = d.first_decade;
    m.last_decade = d.last_decade;
    const double scale = std::max(std::abs(d.total), std::numeric_limits<double>::min());
    const bool tails = std::abs(d.first_decade) > config.tail_fraction * scale ||
                       std::abs(d.last_decade) > config.tail_fraction * scale;
    if (d.capped || (d.total != 0.0 && tails)) {
        m.divergent = true;
        m.value = std::numeric_limits<double>::infinity();
    } else {
        m.value = d.total;
    }
    return m;
}

}  // namespace

WeightedMass weighted_mass(const RadialProfile& u0, const DerivedConstants& c,
                           const QuadratureConfig& config) {
    const double exponent = c.alpha - 1.0;
    auto integrand = [&](double r) {
        const double v = u0(r);
        return v == 0.0 ? 0.0 : std::pow(r, exponent) * v;
    };
    return finish(integrate_by_decades(integrand, config.r_lo, config.r_hi, config.tol,
                                       config.divergence_cap),
                  config);
}

WeightedMass log_power_integral(const RadialProfile& u0, double q,
                                const QuadratureConfig& config) {
    if (!(q > 0.0)) {
        throw InvalidArgument("power q must be positive");
    }
    auto integrand = [&](double r) {
        const double v = u0(r);
        return v <= 0.0 ? 0.0 : std::pow(v, q) / r;
    };
    return finish(integrate_by_decades(integrand, config.r_lo, config.r_hi, config.tol,
                                       config.divergence_cap),
                  config);
}

RatioExtrema ratio_extrema(const RadialProfile& u0, const RadialProfile& reference, double r_lo,
                           double r_hi, std::size_t samples) {
    if (!(r_lo > 0.0) || !(r_lo < r_hi) || samples < 2) {
        throw InvalidArgument("ratio_extrema needs 0 < r_lo < r_hi and >= 2 samples");
    }
    RatioExtrema out;
    out.r_lo = r_lo;
    out.r_hi = r_hi;
    out.samples = samples;
    out.inf_ratio = std::numeric_limits<double>::infinity();
    out.sup_ratio = 0.0;
    const Grid1D y(std::log(r_lo), std::log(r_hi), samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double r = std::exp(y.node(i));
        const double ref = reference(r);
        if (!(ref > 0.0)) {
            throw InvalidArgument("reference profile vanishes inside the ratio window");
        }
        const double ratio = u0(r) / ref;
        out.inf_ratio = std::min(out.inf_ratio, ratio);
        out.sup_ratio = std::max(out.sup_ratio, ratio);
    }
    return out;
}

RatioExtrema ratio_extrema(const RadialProfile& u0, const DerivedConstants& c, double r_lo,
                           double r_hi, std::size_t samples) {
    return ratio_extrema(
        u0, [c](double r) { return eval_U(r, 0.0, c); }, r_lo, r_hi, samples);
}

double sup_norm(const Field& f) {
    return *std::max_element(f.values.begin(), f.values.end());
}

double l1_norm(const Field& f) {
    const auto& v = f.values;
    double sum = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) sum += v[i];
    return sum * f.grid.spacing();
}

double interpolate(const Field& f, double x) {
    if (!f.grid.contains(x)) {
        throw InvalidArgument("interpolation point outside the grid");
    }
    double s = (x - f.grid.lo()) / f.grid.spacing();
    if (std::abs(s - std::round(s)) < 1e-9) s = std::round(s);
    s = std::clamp(s, 0.0, static_cast<double>(f.size() - 1));
    auto i = static_cast<std::size_t>(std::floor(s));
    if (i >= f.size() - 1) i = f.size() - 2;
    const double w = s - static_cast<double>(i);
    return (1.0 - w) * f.values[i] + w * f.values[i + 1];
}

std::size_t argmax(const Field& f) {
    return static_cast<std::size_t>(
        std::distance(f.values.begin(), std::max_element(f.values.begin(), f.values.end())));
}

}  // namespace critheat
