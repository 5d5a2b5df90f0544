#pragma once

#include <string_view>

namespace critheat {

/// Exponents of the radial problem r^-2 u_t = u_rr + (N-1)/r u_r + r^sigma u^p.
struct ProblemParams {
    int N = 3;
    double p = 2.0;
    double sigma = 0.0;
};

/// Constants of the equivalent Fisher-KPP problem Psi_t = Psi_zz - K0 Psi + Psi^p
/// and the two critical exponents. For N in {1, 2} both p_c and p_s are +inf
/// (IEEE infinity, never a large finite sentinel).
struct DerivedConstants {
    ProblemParams params;
    double alpha = 0.0;  // amplitude exponent (sigma + 2) / (p - 1)
    double K0 = 0.0;     // linear absorption coefficient
    double K = 0.0;      // drift speed of the traveling coordinate z = ln r + K t
    double p_c = 0.0;    // Fujita-type exponent
    double p_s = 0.0;    // Sobolev critical exponent

    static constexpr double p_F = 3.0;  // Fujita exponent of Psi_t = Psi_zz + Psi^p

    // K0^(1/(p-1)), the constant positive steady state; only meaningful for K0 > 0.
    double steady_level() const;
};

enum class Regime { FujitaBlowup, FisherKPP, CriticalPc, SigmaMinusTwo };

std::string_view to_string(Regime regime);

/// Throws InvalidArgument unless N >= 1, p > 1, sigma >= -2 (all finite).
void validate(const ProblemParams& params);

/// Relative tolerance used to decide p == p_c and p == p_s.
inline constexpr double kCriticalRelTol = 1e-12;

double critical_fujita(const ProblemParams& params);   // p_c, +inf for N <= 2
double critical_sobolev(const ProblemParams& params);  // p_s, +inf for N <= 2

// Direct formulas in terms of alpha.
double absorption_raw(const ProblemParams& params);
double drift_raw(const ProblemParams& params);
// Factored forms through p_c and p_s; only defined for N >= 3.
double absorption_factored(const ProblemParams& params);
double drift_factored(const ProblemParams& params);

bool is_critical_fujita(const ProblemParams& params);
bool is_critical_sobolev(const ProblemParams& params);

/// Validates and fills every derived constant. K0 is snapped to exactly 0 when
/// p == p_c (within kCriticalRelTol) and K likewise when p == p_s.
DerivedConstants derive_constants(const ProblemParams& params);

Regime classify_regime(const ProblemParams& params);

}  // namespace critheat
