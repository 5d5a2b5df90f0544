#include "critheat/fkpp_solver.hpp"

#include <cmath>

#include "critheat/error.hpp"
#include "critheat/transform.hpp"
#include "march.hpp"
#include "power.hpp"
#include "tridiagonal.hpp"

namespace critheat {
namespace {

class FisherStepper {
public:
    FisherStepper(const DerivedConstants& c, const SolverConfig& config)
        : c_(c), config_(config), n_(config.grid.size()), power_(c.params.p) {
        lower_.resize(n_);
        diag_.resize(n_);
        upper_.resize(n_);
    }

    void operator()(std::vector<double>& psi, double t, double dt) {
        if (dt != factored_dt_) refactor(dt);
        // Exponential Euler for the reaction: the absorption is integrated
        // exactly and the source is frozen over the step. Constant steady
        // states are therefore fixed points of the update.
        for (std::size_t i = 1; i + 1 < n_; ++i) {
            const double v = psi[i];
            psi[i] = absorption_ * v + source_weight_ * power_(v);
        }
        psi[0] = config_.left.at(t + dt);
        psi[n_ - 1] = config_.right.at(t + dt);
        factor_.solve(psi);
        if (detail::all_finite(psi)) detail::clamp_non_negative(psi);
    }

private:
    void refactor(double dt) {
        const double h = config_.grid.spacing();
        const double mu = dt / (h * h);
        for (std::size_t i = 1; i + 1 < n_; ++i) {
            lower_[i] = -mu;
            diag_[i] = 1.0 + 2.0 * mu;
            upper_[i] = -mu;
        }
        lower_[0] = upper_[0] = 0.0;
        diag_[0] = 1.0;
        lower_[n_ - 1] = upper_[n_ - 1] = 0.0;
        diag_[n_ - 1] = 1.0;
        factor_.factor(lower_, diag_, upper_);
        absorption_ = std::exp(-c_.K0 * dt);
        source_weight_ = c_.K0 == 0.0 ? dt : -std::expm1(-c_.K0 * dt) / c_.K0;
        factored_dt_ = dt;
    }

    const DerivedConstants& c_;
    const SolverConfig& config_;
    std::size_t n_;
    detail::Power power_;
    std::vector<double> lower_, diag_, upper_;
    detail::TridiagonalFactor factor_;
    double absorption_ = 1.0;
    double source_weight_ = 0.0;
    double factored_dt_ = -1.0;
};

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

void check_field(const Field& psi, const SolverConfig& config) {
    if (psi.frame != Frame::Traveling) {
        throw InvalidArgument("Fisher-KPP solver expects a traveling-frame field");
    }
    if (psi.size() != config.grid.size() ||
        std::abs(psi.grid.spacing() - config.grid.spacing()) > 1e-12 * config.grid.spacing()) {
        throw InvalidArgument("field grid does not match the solver grid");
    }
}

}  // namespace

double stable_dt(double sup, const DerivedConstants& c, const SolverConfig& config) {
    const double h = config.grid.spacing();
    const double p = c.params.p;
    const double lipschitz = std::abs(c.K0) + p * std::pow(sup, p - 1.0);
    const double dt = config.time.dt_safety * std::min(0.5 * h * h, 1.0 / (lipschitz + 1e-12));
    return std::min(dt, config.time.dt_init);
}

Field step(const Field& psi, double dt, const DerivedConstants& c, const SolverConfig& config) {
    check_field(psi, config);
    if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
    FisherStepper stepper(c, config);
    std::vector<double> v = psi.values;
    stepper(v, psi.t, dt);
    if (!detail::all_finite(v)) {
        throw NumericalError("step overflowed (solution is blowing up)");
    }
    return Field(psi.grid, std::move(v), psi.t + dt, Frame::Traveling);
}

SolveOutcome solve(const Field& psi0, const DerivedConstants& c, const SolverConfig& config) {
    check_field(psi0, config);
    if (psi0.t != 0.0) throw InvalidArgument("initial field must be stamped t = 0");
    const double p = c.params.p;
    const double K0 = std::abs(c.K0);
    const double h = config.grid.spacing();
    detail::MarchProblem problem{
        psi0.grid,
        Frame::Traveling,
        FisherStepper(c, config),
        [p, K0](const std::vector<double>& v) { return K0 + p * std::pow(max_of(v), p - 1.0); },
        [](const std::vector<double>& v) { return max_of(v); },
        [](const std::vector<double>& v) { return max_of(v); },
        [h, p](const std::vector<double>& v) { return detail::discrete_energy(v, h, p); },
    };
    return detail::march(psi0.values, problem, config.time);
}

double energy(const Field& psi, const DerivedConstants& c) {
    return detail::discrete_energy(psi.values, psi.grid.spacing(), c.params.p);
}

}  // namespace critheat
