#include "critheat/radial_solver.hpp"

#include <algorithm>
#include <cmath>

#include "critheat/error.hpp"
#include "march.hpp"
#include "power.hpp"
#include "tridiagonal.hpp"

namespace critheat {
namespace {

// Three-point weights on a non-uniform stencil r_{i-1} < r_i < r_{i+1}.
struct Stencil {
    double second[3];
    double first[3];
};

Stencil stencil(double rm, double r, double rp) {
    const double h1 = r - rm;
    const double h2 = rp - r;
    const double s = h1 + h2;
    Stencil st{};
    st.second[0] = 2.0 / (h1 * s);
    st.second[1] = -2.0 / (h1 * h2);
    st.second[2] = 2.0 / (h2 * s);
    st.first[0] = -h2 / (h1 * s);
    st.first[1] = (h2 - h1) / (h1 * h2);
    st.first[2] = h1 / (h2 * s);
    return st;
}

class RadialStepper {
public:
    RadialStepper(const DerivedConstants& c, const RadialConfig& config, std::vector<double> radii)
        : c_(c), config_(config), r_(std::move(radii)), n_(r_.size()), power_(c.params.p), power_minus_one_(c.params.p - 1.0) {
        const double N = c.params.N;
        op_lower_.assign(n_, 0.0);
        op_diag_.assign(n_, 0.0);
        op_upper_.assign(n_, 0.0);
        source_weight_.assign(n_, 0.0);
        for (std::size_t i = 1; i + 1 < n_; ++i) {
            const Stencil st = stencil(r_[i - 1], r_[i], r_[i + 1]);
            const double r2 = r_[i] * r_[i];
            const double drift = (N - 1.0) * r_[i];
            op_lower_[i] = r2 * st.second[0] + drift * st.first[0];
            op_diag_[i] = r2 * st.second[1] + drift * st.first[1];
            op_upper_[i] = r2 * st.second[2] + drift * st.first[2];
        }
        for (std::size_t i = 0; i < n_; ++i) {
            source_weight_[i] = std::pow(r_[i], c.params.sigma + 2.0);
        }
        lower_.resize(n_);
        diag_.resize(n_);
        upper_.resize(n_);
    }

    void operator()(std::vector<double>& u, double t, double dt) {
        if (dt != factored_dt_) refactor(dt);
        for (std::size_t i = 1; i + 1 < n_; ++i) {
            u[i] += dt * source_weight_[i] * power_(u[i]);
        }
        u[0] = config_.inner.at(t + dt);
        u[n_ - 1] = config_.outer.at(t + dt);
        factor_.solve(u);
        if (detail::all_finite(u)) detail::clamp_non_negative(u);
    }

    // p * max_i r_i^(sigma+2) u_i^(p-1), the nodal reaction Lipschitz scale
    double lipschitz(const std::vector<double>& u) const {
        double m = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (u[i] > 0.0) m = std::max(m, source_weight_[i] * power_minus_one_(u[i]));
        }
        return std::abs(c_.K0) + c_.params.p * m;
    }

private:
    void refactor(double dt) {
        for (std::size_t i = 1; i + 1 < n_; ++i) {
            lower_[i] = -dt * op_lower_[i];
            diag_[i] = 1.0 - dt * op_diag_[i];
            upper_[i] = -dt * op_upper_[i];
        }
        lower_[0] = upper_[0] = 0.0;
        diag_[0] = 1.0;
        lower_[n_ - 1] = upper_[n_ - 1] = 0.0;
        diag_[n_ - 1] = 1.0;
        factor_.factor(lower_, diag_, upper_);
        factored_dt_ = dt;
    }

    const DerivedConstants& c_;
    const RadialConfig& config_;
    std::vector<double> r_;
    std::size_t n_;
    detail::Power power_;
    detail::Power power_minus_one_;
    std::vector<double> op_lower_, op_diag_, op_upper_, source_weight_;
    std::vector<double> lower_, diag_, upper_;
    detail::TridiagonalFactor factor_;
    double factored_dt_ = -1.0;
};

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

}  // namespace

Grid1D RadialConfig::log_grid() const {
    return Grid1D(std::log(r_lo), std::log(r_hi), n);
}

void RadialConfig::validate() const {
    if (!(r_lo > 0.0)) throw InvalidArgument("r_lo must be strictly positive");
    if (!(r_hi > r_lo)) throw InvalidArgument("r_hi must exceed r_lo");
    if (!(observe_r_lo < observe_r_hi)) throw InvalidArgument("observation window is empty");
    time.validate();
}

std::vector<double> log_spaced_radii(double r_lo, double r_hi, std::size_t n) {
    const Grid1D y(std::log(r_lo), std::log(r_hi), n);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = std::exp(y.node(i));
    return r;
}

SolveOutcome solve_radial(const Field& u0, const DerivedConstants& c, const RadialConfig& config) {
    config.validate();
    if (u0.frame != Frame::Radial) throw InvalidArgument("solve_radial expects a radial field");
    if (u0.t != 0.0) throw InvalidArgument("initial field must be stamped t = 0");
    const Grid1D grid = u0.grid;
    std::vector<double> radii(grid.size());
    for (std::size_t i = 0; i < radii.size(); ++i) radii[i] = std::exp(grid.node(i));

    std::vector<std::size_t> window;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] >= config.observe_r_lo && radii[i] <= config.observe_r_hi) window.push_back(i);
    }
    if (window.empty()) throw InvalidArgument("observation window contains no nodes");

    std::vector<double> weight(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) weight[i] = std::pow(radii[i], c.alpha);

    RadialStepper stepper(c, config, radii);
    const double h = grid.spacing();
    const double p = c.params.p;
    detail::MarchProblem problem{
        grid,
        Frame::Radial,
        stepper,
        [&stepper](const std::vector<double>& v) { return stepper.lipschitz(v); },
        [](const std::vector<double>& v) { return max_of(v); },
        [&window](const std::vector<double>& v) {
            double m = 0.0;
            for (std::size_t i : window) m = std::max(m, v[i]);
            return m;
        },
        // energy of the equivalent traveling-frame profile r^alpha u
        [&weight, h, p](const std::vector<double>& v) {
            std::vector<double> psi(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) psi[i] = weight[i] * v[i];
            return detail::discrete_energy(psi, h, p);
        },
    };
    return detail::march(u0.values, problem, config.time);
}

SolveOutcome solve_radial(const RadialProfile& u0, const DerivedConstants& c,
                          const RadialConfig& config) {
    config.validate();
    const Grid1D grid = config.log_grid();
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = u0(std::exp(grid.node(i)));
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            throw InvalidArgument("initial profile must be finite and non-negative");
        }
    }
    values.front() = config.inner.at(0.0);
    values.back() = config.outer.at(0.0);
    return solve_radial(Field(grid, std::move(values), 0.0, Frame::Radial), c, config);
}

double residual(const std::function<double(double, double)>& f, bool time_dependent,
                const DerivedConstants& c, std::span<const double> radii, double t, double dt_fd) {
    if (radii.size() < 3) throw InvalidArgument("residual needs at least three nodes");
    const double N = c.params.N;
    const double p = c.params.p;
    const double sigma = c.params.sigma;
    std::vector<double> v(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) v[i] = f(radii[i], t);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < radii.size(); ++i) {
        const double r = radii[i];
        const Stencil st = stencil(radii[i - 1], r, radii[i + 1]);
        const double f_rr = st.second[0] * v[i - 1] + st.second[1] * v[i] + st.second[2] * v[i + 1];
        const double f_r = st.first[0] * v[i - 1] + st.first[1] * v[i] + st.first[2] * v[i + 1];
        double f_t = 0.0;
        if (time_dependent) {
            f_t = (f(r, t + dt_fd) - f(r, t - dt_fd)) / (2.0 * dt_fd);
        }
        const double res =
            f_t / (r * r) - f_rr - (N - 1.0) / r * f_r - std::pow(r, sigma) * std::pow(v[i], p);
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

double residual(const ClosedForm& form, std::span<const double> radii, double t) {
    return residual([&form](double r, double time) { return form(r, time); }, form.time_dependent(),
                    form.constants(), radii, t);
}

double residual(const Field& u, const DerivedConstants& c) {
    if (u.frame != Frame::Radial) throw InvalidArgument("residual expects a radial field");
    std::vector<double> radii(u.size());
    for (std::size_t i = 0; i < radii.size(); ++i) radii[i] = u.radius(i);
    const std::vector<double>& values = u.values;
    auto lookup = [&radii, &values](double r, double) {
        const auto it = std::lower_bound(radii.begin(), radii.end(), r);
        return values[static_cast<std::size_t>(std::distance(radii.begin(), it))];
    };
    return residual(lookup, false, c, radii, u.t);
}

}  // namespace critheat
