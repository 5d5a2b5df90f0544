#include <cmath>
#include <limits>

#include <boost/rational.hpp>
#include <gtest/gtest.h>

#include "critheat/error.hpp"
#include "critheat/params.hpp"

namespace {

using critheat::ProblemParams;
using critheat::Regime;
using Q = boost::rational<long long>;

// Exact rational evaluation of the constants, written out from the definitions
// alpha = (sigma + 2)/(p - 1), K0 = alpha (N - 2 - alpha), K = N - 2 - 2 alpha.
struct Exact {
    Q alpha, K0, K;
};

Exact exact(long long N, Q p, Q sigma) {
    const Q alpha = (sigma + 2) / (p - 1);
    return {alpha, alpha * (Q(N) - 2 - alpha), Q(N) - 2 - 2 * alpha};
}

double to_double(Q q) { return boost::rational_cast<double>(q); }

constexpr double kExactTol = 1e-15;

TEST(Params, OracleTableMatchesRationalArithmetic) {
    struct Row {
        int N;
        Q p, sigma;
    };
    const Row rows[] = {
        {4, Q(7, 2), Q(1)}, {4, Q(4), Q(1)},    {4, Q(9, 2), Q(1)}, {4, Q(2), Q(1)},
        {3, Q(2), Q(0)},    {5, Q(3), Q(1, 2)}, {1, Q(3), Q(0)},    {6, Q(5, 4), Q(-3, 2)},
    };
    for (const auto& row : rows) {
        const ProblemParams prm{row.N, to_double(row.p), to_double(row.sigma)};
        const auto c = critheat::derive_constants(prm);
        const auto e = exact(row.N, row.p, row.sigma);
        EXPECT_NEAR(c.alpha, to_double(e.alpha), kExactTol * std::abs(to_double(e.alpha)) + 1e-15);
        EXPECT_NEAR(c.K0, to_double(e.K0), 1e-14 * std::max(1.0, std::abs(to_double(e.K0))));
        EXPECT_NEAR(c.K, to_double(e.K), 1e-14 * std::max(1.0, std::abs(to_double(e.K))));
    }
}

TEST(Params, DocumentedExamples) {
    const auto a = critheat::derive_constants({4, 3.5, 1.0});
    EXPECT_NEAR(a.alpha, 1.2, 1e-15);
    EXPECT_NEAR(a.K0, 0.96, 1e-15);
    EXPECT_NEAR(a.K, -0.4, 1e-15);

    const auto b = critheat::derive_constants({4, 4.0, 1.0});
    EXPECT_EQ(b.p_s, 4.0);
    EXPECT_EQ(b.K, 0.0);
    EXPECT_EQ(b.K0, 1.0);

    const auto f = critheat::derive_constants({4, 2.0, 1.0});
    EXPECT_EQ(f.alpha, 3.0);
    EXPECT_EQ(f.K0, -3.0);
    EXPECT_EQ(f.p_c, 2.5);
}

TEST(Params, LowDimensionsHaveInfiniteExponents) {
    for (int N : {1, 2}) {
        const auto c = critheat::derive_constants({N, 5.0, 0.0});
        EXPECT_TRUE(std::isinf(c.p_c));
        EXPECT_TRUE(std::isinf(c.p_s));
        EXPECT_GT(c.p_c, 0.0);
    }
}

TEST(Params, ValidationErrors) {
    EXPECT_THROW(critheat::derive_constants({4, 1.0, 0.0}), critheat::InvalidArgument);
    EXPECT_THROW(critheat::derive_constants({4, 0.5, 0.0}), critheat::InvalidArgument);
    EXPECT_THROW(critheat::derive_constants({4, 2.0, -2.5}), critheat::InvalidArgument);
    EXPECT_THROW(critheat::derive_constants({0, 2.0, 0.0}), critheat::InvalidArgument);
    EXPECT_THROW(critheat::derive_constants({3, std::numeric_limits<double>::quiet_NaN(), 0.0}),
                 critheat::InvalidArgument);
    try {
        critheat::derive_constants({4, 0.5, 0.0});
        FAIL();
    } catch (const critheat::InvalidArgument& e) {
        EXPECT_STREQ(e.what(), "p must exceed 1");
    }
}

TEST(Params, SigmaMinusTwoDegenerates) {
    const auto c = critheat::derive_constants({5, 7.0, -2.0});
    EXPECT_EQ(c.alpha, 0.0);
    EXPECT_EQ(c.K0, 0.0);
    EXPECT_EQ(c.K, 3.0);
}

TEST(Params, RegimeClassification) {
    EXPECT_EQ(critheat::classify_regime({1, 2.0, 0.0}), Regime::FujitaBlowup);
    EXPECT_EQ(critheat::classify_regime({2, 50.0, 3.0}), Regime::FujitaBlowup);
    EXPECT_EQ(critheat::classify_regime({4, 4.5, 1.0}), Regime::FisherKPP);
    EXPECT_EQ(critheat::classify_regime({4, 2.0, 1.0}), Regime::FujitaBlowup);
    EXPECT_EQ(critheat::classify_regime({4, 2.5, 1.0}), Regime::CriticalPc);
    EXPECT_EQ(critheat::classify_regime({5, 7.0, -2.0}), Regime::SigmaMinusTwo);
    EXPECT_EQ(critheat::to_string(Regime::CriticalPc), "CriticalPc");
}

TEST(Params, CriticalEqualityUsesRelativeTolerance) {
    // (3 + 0.1) / 1 in floating point versus a p that differs in the last ulp.
    const double pc = critheat::critical_fujita({3, 0.0, 0.1});
    EXPECT_TRUE(critheat::is_critical_fujita({3, std::nextafter(pc, 10.0), 0.1}));
    EXPECT_FALSE(critheat::is_critical_fujita({3, pc * (1 + 1e-9), 0.1}));
    EXPECT_EQ(critheat::derive_constants({3, std::nextafter(pc, 10.0), 0.1}).K0, 0.0);
}

TEST(Params, FactoredFormsRequireThreeDimensions) {
    EXPECT_THROW(critheat::absorption_factored({2, 3.0, 0.0}), critheat::InvalidArgument);
    EXPECT_THROW(critheat::drift_factored({1, 3.0, 0.0}), critheat::InvalidArgument);
    const ProblemParams prm{4, 3.5, 1.0};
    EXPECT_NEAR(critheat::absorption_factored(prm), critheat::absorption_raw(prm), 1e-15);
    EXPECT_NEAR(critheat::drift_factored(prm), critheat::drift_raw(prm), 1e-15);
}

TEST(Params, SteadyLevel) {
    const auto c = critheat::derive_constants({4, 3.5, 1.0});
    EXPECT_NEAR(c.steady_level(), std::pow(0.96, 1.0 / 2.5), 1e-15);
    EXPECT_NEAR(c.steady_level(), 0.98380, 1e-5);
}

}  // namespace
