#include "critheat/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "critheat/error.hpp"

namespace critheat {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double alpha_of(const ProblemParams& params) {
    return (params.sigma + 2.0) / (params.p - 1.0);
}

bool near(double a, double b) {
    return std::abs(a - b) <= kCriticalRelTol * std::max(1.0, std::abs(b));
}

}  // namespace

double DerivedConstants::steady_level() const {
    return std::pow(K0, 1.0 / (params.p - 1.0));
}

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::FujitaBlowup: return "FujitaBlowup";
        case Regime::FisherKPP: return "FisherKPP";
        case Regime::CriticalPc: return "CriticalPc";
        case Regime::SigmaMinusTwo: return "SigmaMinusTwo";
    }
    return "unknown";
}

void validate(const ProblemParams& params) {
    if (params.N < 1) {
        throw InvalidArgument("N must be at least 1");
    }
    if (!std::isfinite(params.p) || !(params.p > 1.0)) {
        throw InvalidArgument("p must exceed 1");
    }
    if (!std::isfinite(params.sigma) || !(params.sigma >= -2.0)) {
        throw InvalidArgument("sigma must be >= -2");
    }
}

double critical_fujita(const ProblemParams& params) {
    if (params.N <= 2) return kInf;
    return (params.N + params.sigma) / (params.N - 2.0);
}

double critical_sobolev(const ProblemParams& params) {
    if (params.N <= 2) return kInf;
    return (params.N + 2.0 * params.sigma + 2.0) / (params.N - 2.0);
}

double absorption_raw(const ProblemParams& params) {
    const double a = alpha_of(params);
    return a * (params.N - 2.0 - a);
}

double drift_raw(const ProblemParams& params) {
    return params.N - 2.0 - 2.0 * alpha_of(params);
}

double absorption_factored(const ProblemParams& params) {
    if (params.N <= 2) {
        throw InvalidArgument("factored K0 requires N >= 3");
    }
    const double pm1 = params.p - 1.0;
    return (params.sigma + 2.0) * (params.N - 2.0) / (pm1 * pm1) *
           (params.p - critical_fujita(params));
}

double drift_factored(const ProblemParams& params) {
    if (params.N <= 2) {
        throw InvalidArgument("factored K requires N >= 3");
    }
    return (params.N - 2.0) / (params.p - 1.0) * (params.p - critical_sobolev(params));
}

bool is_critical_fujita(const ProblemParams& params) {
    return params.N >= 3 && near(params.p, critical_fujita(params));
}

bool is_critical_sobolev(const ProblemParams& params) {
    return params.N >= 3 && near(params.p, critical_sobolev(params));
}

DerivedConstants derive_constants(const ProblemParams& params) {
    validate(params);
    DerivedConstants c;
    c.params = params;
    c.alpha = alpha_of(params);
    c.p_c = critical_fujita(params);
    c.p_s = critical_sobolev(params);
    if (params.sigma == -2.0) {
        c.alpha = 0.0;
        c.K0 = 0.0;
        c.K = params.N - 2.0;
        return c;
    }
    c.K0 = is_critical_fujita(params) ? 0.0 : absorption_raw(params);
    c.K = is_critical_sobolev(params) ? 0.0 : drift_raw(params);
    return c;
}

Regime classify_regime(const ProblemParams& params) {
    validate(params);
    if (params.sigma == -2.0) return Regime::SigmaMinusTwo;
    if (params.N <= 2) return Regime::FujitaBlowup;
    if (is_critical_fujita(params)) return Regime::CriticalPc;
    return params.p < critical_fujita(params) ? Regime::FujitaBlowup : Regime::FisherKPP;
}

}  // namespace critheat
