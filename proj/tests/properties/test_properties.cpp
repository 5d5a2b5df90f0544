// Randomized invariants. Every generator is seeded, so failures reproduce.

#include <chrono>
#include <cmath>
#include <cstdio>

#include <gtest/gtest.h>

#include "../support/generators.hpp"
#include "critheat/closed_forms.hpp"
#include "critheat/experiments.hpp"
#include "critheat/fkpp_solver.hpp"
#include "critheat/radial_solver.hpp"
#include "critheat/transform.hpp"

namespace {

using namespace critheat;
using namespace critheat::testing;

constexpr double kRoundTripTol = 1e-14;
constexpr double kIdentityTol = 1e-12;
constexpr double kOrderTol = 1e-12;
constexpr double kMassTol = 1e-6;

TEST(Property, RoundTripIsIdentity) {
    Rng rng(kSeed);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const auto c = derive_constants(random_params(rng));
        const Field u = random_radial_field(rng, c.alpha);
        const Field back = from_fisher(to_fisher(u, c), c);
        worst = std::max(worst, max_relative_error(u.values, back.values));
        ASSERT_LE(std::abs(back.grid.lo() - u.grid.lo()), 1e-14 * std::max(1.0, std::abs(u.grid.lo())));

        Field psi = to_fisher(u, c);
        const Field again = to_fisher(from_fisher(psi, c), c);
        worst = std::max(worst, max_relative_error(psi.values, again.values));
    }
    EXPECT_LE(worst, kRoundTripTol);
    std::printf("round trip: worst relative error %.3e\n", worst);
}

TEST(Property, TransformPreservesOrder) {
    Rng rng(kSeed + 1);
    const Grid1D z(-6.0, 6.0, 1201);
    for (int k = 0; k < 20; ++k) {
        const auto c = derive_constants(random_params(rng));
        const auto [lo, hi] = random_ordered_pair(rng, 1.0);
        const Field a = map_initial(lo, c, z);
        const Field b = map_initial(hi, c, z);
        for (std::size_t i = 0; i < z.size(); ++i) ASSERT_LE(a.values[i], b.values[i]);
        const Field ua = from_fisher(a, c), ub = from_fisher(b, c);
        for (std::size_t i = 0; i < z.size(); ++i) ASSERT_LE(ua.values[i], ub.values[i]);
    }
}

TEST(Property, SolverPreservesOrder) {
    Rng rng(kSeed + 2);
    std::size_t compared = 0;
    for (int k = 0; k < 20; ++k) {
        const auto c = derive_constants(random_fisher_params(rng));
        const auto [lo, hi] = random_ordered_pair(rng, 1.0);
        const auto check = solver_order_check(lo, hi, c);
        EXPECT_LE(check.violation, kOrderTol) << "pair " << k;
        compared += check.snapshots_compared;
    }
    EXPECT_GE(compared, 60u);
}

TEST(Property, RadialSolverPreservesOrder) {
    Rng rng(kSeed + 3);
    for (int k = 0; k < 5; ++k) {
        const auto c = derive_constants(random_fisher_params(rng));
        const auto [lo, hi] = random_ordered_pair(rng, 0.3);
        RadialConfig cfg;
        cfg.r_lo = std::exp(-8.0);
        cfg.r_hi = std::exp(8.0);
        cfg.n = 321;
        cfg.time.t_max = 0.5;
        cfg.time.dt_init = 2e-4;
        cfg.time.snapshot_times = {0.1, 0.25, 0.5};
        const auto a = solve_radial(lo, c, cfg);
        const auto b = solve_radial(hi, c, cfg);
        const std::size_t shared = std::min(a.snapshots.size(), b.snapshots.size());
        ASSERT_GT(shared, 0u);
        for (std::size_t s = 0; s < shared; ++s) {
            for (std::size_t i = 0; i < cfg.n; ++i) {
                EXPECT_LE(a.snapshots[s].values[i],
                          b.snapshots[s].values[i] * (1.0 + kOrderTol) + 1e-300);
            }
        }
    }
}

TEST(Property, CriticalExponentsZeroTheConstants) {
    for (int N = 3; N < 33; ++N) {
        for (int j = 0; j < 30; ++j) {
            const double sigma = -2.0 + (j + 1) * (12.0 / 30.0);  // (-2, 10]
            const ProblemParams at_pc{N, critical_fujita({N, 2.0, sigma}), sigma};
            const ProblemParams at_ps{N, critical_sobolev({N, 2.0, sigma}), sigma};
            // Raw formulas: the residual is rounding relative to the summands.
            const double a_c = (sigma + 2.0) / (at_pc.p - 1.0);
            const double a_s = (sigma + 2.0) / (at_ps.p - 1.0);
            EXPECT_LE(std::abs(absorption_raw(at_pc)), kIdentityTol * a_c * (N - 2.0 + a_c));
            EXPECT_LE(std::abs(drift_raw(at_ps)), kIdentityTol * (N - 2.0 + 2.0 * a_s));
            EXPECT_LE(std::abs(absorption_factored(at_pc)), kIdentityTol);
            EXPECT_LE(std::abs(drift_factored(at_ps)), kIdentityTol);
            // The derived constants snap the critical cases to exact zeros.
            EXPECT_EQ(derive_constants(at_pc).K0, 0.0);
            EXPECT_EQ(derive_constants(at_ps).K, 0.0);
            EXPECT_EQ(classify_regime(at_pc), Regime::CriticalPc);
        }
    }
}

TEST(Property, SignsFollowTheCriticalExponents) {
    Rng rng(kSeed + 4);
    for (int k = 0; k < 1000; ++k) {
        const auto prm = random_params(rng);
        const auto c = derive_constants(prm);
        EXPECT_EQ(c.K0 > 0.0, prm.p > c.p_c) << prm.N << " " << prm.p << " " << prm.sigma;
        EXPECT_EQ(c.K > 0.0, prm.p > c.p_s);
        EXPECT_GT(c.alpha, 0.0);
    }
    const auto degenerate = derive_constants({4, 3.0, -2.0});
    EXPECT_EQ(degenerate.alpha, 0.0);
}

TEST(Property, FactoredAndRawFormulasAgree) {
    Rng rng(kSeed + 5);
    for (int k = 0; k < 1000; ++k) {
        const auto prm = random_params(rng);
        const double a = (prm.sigma + 2.0) / (prm.p - 1.0);
        // Both forms cancel near the critical exponents, so the error is
        // measured against the size of the cancelling terms.
        const double scale_K0 = a * (prm.N - 2.0 + a);
        const double scale_K = prm.N - 2.0 + 2.0 * a;
        EXPECT_LE(std::abs(absorption_factored(prm) - absorption_raw(prm)), kIdentityTol * scale_K0);
        EXPECT_LE(std::abs(drift_factored(prm) - drift_raw(prm)), kIdentityTol * scale_K);
    }
}

TEST(Property, WeightedMassEqualsL1OfMappedDatum) {
    Rng rng(kSeed + 6);
    const Grid1D z(-5.0, 5.0, 4001);
    for (int k = 0; k < 30; ++k) {
        const auto c = derive_constants(random_params(rng));
        const BumpSum u0 = random_bump_sum(rng, 1.0);
        const auto m = weighted_mass(u0, c);
        ASSERT_FALSE(m.divergent);
        const double l1 = l1_norm(map_initial(u0, c, z));
        EXPECT_LE(std::abs(m.value - l1), kMassTol * std::max(1.0, l1)) << "case " << k;
    }
}

TEST(Property, DataBelowSMapBelowSteadyLevel) {
    Rng rng(kSeed + 7);
    const Grid1D z(-40.0, 40.0, 1601);
    for (int k = 0; k < 200; ++k) {
        const auto c = derive_constants(random_fisher_params(rng));
        const CappedSDatum d{std::exp(uniform(rng, -3.0, 3.0)), uniform(rng, 0.01, 0.99)};
        const auto u0 = make_profile(d, c);
        EXPECT_LT(sup_norm(map_initial(u0, c, z)), c.steady_level());
    }
}

TEST(Property, ClassificationIsMonotoneInLambda) {
    const auto c = derive_constants({4, 4.5, 1.0});
    int previous = -1;  // 0 = decay, 1 = blow-up
    for (double lambda : {0.5, 0.9, 0.99, 1.01, 1.1, 1.5}) {
        const auto cls = classify_datum(make_profile(ScaledUDatum{lambda}, c), c, default_horizon(c));
        ASSERT_NE(cls.status, Status::Undetermined) << lambda;
        const int s = cls.status == Status::BlewUp ? 1 : 0;
        EXPECT_GE(s, previous) << lambda;
        previous = s;
    }
    EXPECT_EQ(previous, 1);
}

TEST(Property, SolvesAreDeterministic) {
    const auto c = derive_constants({4, 3.5, 1.0});
    SolverConfig cfg;
    cfg.time.t_max = 2.0;
    cfg.time.snapshot_times = {1.0, 2.0};
    const Field psi0 = map_initial(make_profile(BumpDatum{1.0, 0.5, 1.0}, c), c, cfg.grid);
    const auto a = solve(psi0, c, cfg);
    const auto b = solve(psi0, c, cfg);
    EXPECT_EQ(a.steps, b.steps);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) EXPECT_EQ(a.trace[i].sup, b.trace[i].sup);
    for (std::size_t s = 0; s < a.snapshots.size(); ++s) {
        EXPECT_EQ(a.snapshots[s].values, b.snapshots[s].values);
    }
}

}  // namespace
