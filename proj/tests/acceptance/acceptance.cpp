// Acceptance suite: one PASS/FAIL line per criterion.
//
//   critheat_acceptance            run every criterion
//   critheat_acceptance 2 5 7      run a selection
//
// Exit status is 0 iff every selected criterion passes. Run parameters come
// from the shipped configs/ directory so the CLI and this suite exercise the
// same setups; every tolerance is pinned below.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "../support/generators.hpp"
#include "critheat/closed_forms.hpp"
#include "critheat/config.hpp"
#include "critheat/experiments.hpp"
#include "critheat/fkpp_solver.hpp"
#include "critheat/radial_solver.hpp"
#include "critheat/transform.hpp"

namespace {

using namespace critheat;

// ---------------------------------------------------------------------------
// Pinned tolerances

namespace tol {
constexpr double kOrderLo = 1.8, kOrderHi = 2.2;    // 1
constexpr double kResidualSeconds = 10.0;            // 1
constexpr double kEquivalenceGap = 1e-3;             // 2
constexpr double kEquivalenceReduction = 3.0;        // 2
constexpr double kEquivalenceSeconds = 60.0;         // 2
constexpr double kFujitaHorizon = 100.0;             // 3
constexpr double kSlopeLo = 0.95, kSlopeHi = 1.05;   // 4, as multiples of -K0
constexpr double kDecaySeconds = 60.0;               // 4
constexpr double kMassGap = 1e-6;                    // 5
constexpr double kFinalFraction = 0.05;              // 5
constexpr double kLambdaLo = 0.9, kLambdaHi = 1.1;   // 6
constexpr double kBracketWidth = 2e-4;               // 6
constexpr int kBisections = 12;                      // 6
constexpr double kStationaryDrift = 1e-4;            // 7
constexpr double kStationaryTime = 5.0;              // 7
constexpr double kRoundTrip = 1e-14;                 // 10
constexpr double kIdentity = 1e-12;                  // 10
constexpr double kOrderViolation = 1e-12;            // 10
constexpr int kOrderedPairs = 20;                    // 10
constexpr double kPropertySeconds = 300.0;           // 10
}  // namespace tol

// ---------------------------------------------------------------------------

struct Result {
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        details.push_back(std::string(ok ? "" : "!") + what);
    }
};

std::string num(double v, int precision = 4) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

std::filesystem::path config_dir() {
    if (const char* env = std::getenv("CRITHEAT_CONFIG_DIR")) return env;
    return CRITHEAT_CONFIG_DIR;
}

RunConfig load(const std::string& name) { return parse_config_file(config_dir() / name); }

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string report_summary(const ExperimentReport& rep) {
    std::string s;
    for (const auto& m : rep.measurements) {
        if (!s.empty()) s += ", ";
        s += (m.pass ? "" : "!") + m.name + "=" + num(m.value);
    }
    return s;
}

// ---------------------------------------------------------------------------
// 1. Closed-form residuals converge at second order.

Result closed_form_residuals() {
    Result r;
    const Stopwatch clock;
    for (double p : {3.5, 4.0, 4.5}) {
        const auto c = derive_constants({4, p, 1.0});
        for (const auto& [label, form, t] :
             {std::tuple{"S", ClosedForm::singular_stationary(c), 0.0},
              std::tuple{"U", ClosedForm::eternal(c), 0.7}}) {
            const std::array<std::size_t, 3> sizes{501, 1001, 2001};
            std::vector<double> res;
            for (std::size_t n : sizes) {
                res.push_back(residual(form, log_spaced_radii(0.1, 10.0, n), t));
            }
            for (std::size_t k = 0; k + 1 < res.size(); ++k) {
                const double order = std::log2(res[k] / res[k + 1]);
                r.check(order >= tol::kOrderLo && order <= tol::kOrderHi,
                        std::string(label) + "(p=" + num(p) + ", n=" + std::to_string(sizes[k]) +
                            "->" + std::to_string(sizes[k + 1]) + ") order " + num(order));
            }
        }
    }
    const double secs = clock.seconds();
    r.check(secs < tol::kResidualSeconds, "runtime " + num(secs, 3) + " s");
    return r;
}

// 2. Radial and Fisher paths agree.

Result transformation_equivalence() {
    Result r;
    const Stopwatch clock;
    const RunConfig cfg = load("roundtrip.json");
    const auto c = derive_constants(cfg.params);
    const auto eq = transform_equivalence(make_profile(cfg.initial, c), c, equivalence_config(cfg));
    const double coarse = eq.levels.front().gaps.back();
    const double fine = eq.levels.back().gaps.back();
    r.check(eq.times.back() == 1.0, "compared at t=" + num(eq.times.back()));
    r.check(coarse < tol::kEquivalenceGap, "gap(n=" + std::to_string(eq.levels.front().n) +
                                               ") " + num(coarse));
    r.check(coarse / fine >= tol::kEquivalenceReduction, "reduction " + num(coarse / fine));
    r.check(eq.statuses_agree, "statuses agree");
    const double secs = clock.seconds();
    r.check(secs < tol::kEquivalenceSeconds, "runtime " + num(secs, 3) + " s");
    return r;
}

// 3. Below p_c every small bump blows up.

Result fujita_regime() {
    Result r;
    RunConfig cfg = load("classify_fujita.json");
    std::vector<ProblemParams> cases{cfg.params, ProblemParams{1, 3.0, 0.0}};
    for (const auto& prm : cases) {
        cfg.params = prm;
        const auto c = derive_constants(prm);
        const auto cls =
            classify_datum(make_profile(cfg.initial, c), c, tol::kFujitaHorizon, cfg.solver_config(c));
        r.check(cls.status == Status::BlewUp && cls.outcome.t_end <= tol::kFujitaHorizon,
                "(N=" + std::to_string(prm.N) + ",sigma=" + num(prm.sigma) + ",p=" + num(prm.p) +
                    ") " + std::string(to_string(cls.status)) + " at t=" + num(cls.outcome.t_end));
    }
    return r;
}

// 4. Sub-S data decay at the rate e^(-K0 t).

Result decay_rate() {
    Result r;
    const Stopwatch clock;
    const RunConfig cfg = load("decay_fit.json");
    const auto c = derive_constants(cfg.params);
    const double horizon = cfg.experiment.horizon.value_or(default_horizon(c));
    const auto cls = classify_datum(make_profile(cfg.initial, c), c, horizon, cfg.solver_config(c));
    const auto fit = decay_rate_fit(cls.outcome.trace, cfg.experiment.window_fraction);
    const double lo = -c.K0 * tol::kSlopeHi, hi = -c.K0 * tol::kSlopeLo;
    r.check(fit.slope >= lo && fit.slope <= hi,
            "slope " + num(fit.slope, 7) + " in [" + num(lo) + ", " + num(hi) + "]");
    r.details.push_back("K0=" + num(c.K0) + " status " + std::string(to_string(cls.status)));
    const double secs = clock.seconds();
    r.check(secs < tol::kDecaySeconds, "runtime " + num(secs, 3) + " s");
    return r;
}

// 5. Gaussian attractor.

Result gaussian_attractor() {
    Result r;
    const RunConfig cfg = load("gauss_check.json");
    const auto c = derive_constants(cfg.params);
    const auto gc = gauss_check_config(cfg, c);
    const auto res = gauss_check(c, gc);
    const double gap = std::abs(res.mass.value - res.l1_check_grid);
    r.check(gap <= tol::kMassGap, "mass gap " + num(gap));
    r.check(res.deviation.decreasing, "D decreasing");
    std::string series;
    for (double d : res.deviation.D) series += (series.empty() ? "" : " ") + num(d, 3);
    r.details.push_back("D=[" + series + "]");
    const double final_d = res.deviation.D.back();
    const double final_g = res.deviation.sup_G.back();
    r.check(final_d < tol::kFinalFraction * final_g,
            "final D " + num(final_d) + " < " + num(tol::kFinalFraction * final_g));
    return r;
}

// 6. U separates decay from blow-up.

Result separatrix() {
    Result r;
    for (const char* name : {"separatrix_p4.5.json", "separatrix_p4.json"}) {
        const RunConfig cfg = load(name);
        const auto c = derive_constants(cfg.params);
        const auto& e = cfg.experiment;
        const auto s = separatrix_bisect(c, e.lambda_lo, e.lambda_hi, tol::kBisections, e.horizon,
                                         cfg.base_solver());
        r.check(s.lambda_star >= tol::kLambdaLo && s.lambda_star <= tol::kLambdaHi,
                "p=" + num(cfg.params.p) + " lambda*=" + num(s.lambda_star, 8));
        r.check(s.width() < tol::kBracketWidth, "width " + num(s.width()));
    }
    return r;
}

// 7. At p = p_s the pulse should stay put.

Result stationarity_at_ps() {
    Result r;
    const auto c = derive_constants({4, 4.0, 1.0});
    SolverConfig cfg;  // default grid and controls, zero ends
    cfg.time.t_max = tol::kStationaryTime;
    // Dense snapshots only feed the growth-rate diagnostic; the criterion
    // itself looks at t = 5.
    for (int k = 1; k <= 100; ++k) cfg.time.snapshot_times.push_back(0.05 * k);
    std::vector<double> pulse(cfg.grid.size());
    for (std::size_t i = 0; i < pulse.size(); ++i) {
        pulse[i] = eval_fisher_pulse(cfg.grid.node(i), c);
    }
    const auto out = solve(Field(cfg.grid, pulse, 0.0, Frame::Traveling), c, cfg);

    std::vector<double> ts, logs;
    double final_drift = INFINITY;
    for (const auto& f : out.snapshots) {
        double d = 0.0;
        for (std::size_t i = 0; i < pulse.size(); ++i) d = std::max(d, std::abs(f.values[i] - pulse[i]));
        if (std::abs(f.t - tol::kStationaryTime) < 1e-12) final_drift = d;
        if (f.t >= 0.25 && d > 0.0 && d < 0.1) {
            ts.push_back(f.t);
            logs.push_back(std::log(d));
        }
    }
    r.check(final_drift < tol::kStationaryDrift,
            "sup|Psi(5) - pulse| " + num(final_drift) + " (status " +
                std::string(to_string(out.status)) + ", t_end " + num(out.t_end) + ")");
    if (ts.size() >= 2) {
        double mt = 0, ml = 0;
        for (std::size_t i = 0; i < ts.size(); ++i) mt += ts[i], ml += logs[i];
        mt /= ts.size();
        ml /= ts.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            sxy += (ts[i] - mt) * (logs[i] - ml);
            sxx += (ts[i] - mt) * (ts[i] - mt);
        }
        const double p = c.params.p;
        const double mu = c.K0 * (p - 1.0) * (p + 3.0) / 4.0;
        r.details.push_back("drift growth rate " + num(sxy / sxx) + " over t in [" +
                            num(ts.front()) + ", " + num(ts.back()) + "] vs unstable eigenvalue " +
                            num(mu) + " of the linearized pulse");
    }
    return r;
}

// 8. sigma = -2.

Result sigma_minus_two() {
    Result r;
    for (const char* name : {"sigma2_plateau.json", "sigma2_supported.json"}) {
        const RunConfig cfg = load(name);
        const auto rep = sigma_minus2_suite(cfg.params, sigma2_config(cfg));
        r.check(rep.passed() && !rep.measurements.empty(), rep.id + ": " + report_summary(rep));
    }
    return r;
}

// 9. p = p_c.

Result critical_pc() {
    Result r;
    const std::map<std::string, std::string> expected{
        {"pc_N4_sigma1.json", "blows_up"},
        {"pc_N3_small.json", "no_blowup_by_horizon"},
        {"pc_N3_large.json", "blows_up"},
        {"pc_N4_sigma2.json", "blows_up"},
    };
    for (const auto& [name, claim] : expected) {
        const RunConfig cfg = load(name);
        const auto rep = critical_pc_suite(cfg.params, critical_pc_config(cfg));
        bool asserted = false;
        for (const auto& m : rep.measurements) asserted = asserted || m.name == claim;
        r.check(asserted && rep.passed(), name + ": " + report_summary(rep));
    }
    return r;
}

// 10. Infrastructure properties.

Result infrastructure() {
    using namespace critheat::testing;
    Result r;
    const Stopwatch clock;

    Rng rng(kSeed);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const auto c = derive_constants(random_params(rng));
        const Field u = random_radial_field(rng, c.alpha);
        worst = std::max(worst, max_relative_error(u.values, from_fisher(to_fisher(u, c), c).values));
    }
    r.check(worst <= tol::kRoundTrip, "round-trip " + num(worst));

    double violation = 0.0;
    for (int k = 0; k < tol::kOrderedPairs; ++k) {
        const auto c = derive_constants(random_fisher_params(rng));
        const auto [lo, hi] = random_ordered_pair(rng, 1.0);
        const auto a = map_initial(lo, c, Grid1D(-15.0, 15.0, 301));
        const auto b = map_initial(hi, c, Grid1D(-15.0, 15.0, 301));
        for (std::size_t i = 0; i < a.size(); ++i) violation = std::max(violation, a.values[i] - b.values[i]);
        violation = std::max(violation, solver_order_check(lo, hi, c).violation);
    }
    r.check(violation <= tol::kOrderViolation,
            "order violation " + num(violation) + " over " + std::to_string(tol::kOrderedPairs) +
                " pairs");

    double identity = 0.0;
    for (int N = 3; N < 33; ++N) {
        for (int j = 0; j < 30; ++j) {
            const double sigma = -2.0 + (j + 1) * (12.0 / 30.0);
            const double pc = critical_fujita({N, 2.0, sigma});
            const double ps = critical_sobolev({N, 2.0, sigma});
            identity = std::max({identity, std::abs(absorption_factored({N, pc, sigma})),
                                 std::abs(drift_factored({N, ps, sigma})),
                                 std::abs(derive_constants({N, pc, sigma}).K0),
                                 std::abs(derive_constants({N, ps, sigma}).K)});
            const double a = (sigma + 2.0) / (pc - 1.0);
            identity = std::max(identity, std::abs(absorption_raw({N, pc, sigma})) / (a * (N - 2.0 + a)));
            const double b = (sigma + 2.0) / (ps - 1.0);
            identity = std::max(identity, std::abs(drift_raw({N, ps, sigma})) / (N - 2.0 + 2.0 * b));
        }
    }
    r.check(identity <= tol::kIdentity, "K0(p_c), K(p_s) over 30x30 grid: " + num(identity));

    const double secs = clock.seconds();
    r.check(secs < tol::kPropertySeconds, "runtime " + num(secs, 3) + " s");
    return r;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Result()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "closed-form residual order", closed_form_residuals},
        {2, "transformation equivalence", transformation_equivalence},
        {3, "Fujita regime blow-up", fujita_regime},
        {4, "decay rate", decay_rate},
        {5, "Gaussian attractor", gaussian_attractor},
        {6, "separatrix", separatrix},
        {7, "stationarity at p_s", stationarity_at_ps},
        {8, "sigma = -2 suite", sigma_minus_two},
        {9, "critical case p = p_c", critical_pc},
        {10, "infrastructure properties", infrastructure},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    bool all_pass = true;
    for (const auto& c : criteria()) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
            continue;
        }
        const Stopwatch clock;
        Result res;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            res.pass = false;
            res.details.push_back(std::string("!exception: ") + e.what());
        }
        std::string detail;
        for (const auto& d : res.details) detail += (detail.empty() ? "" : "; ") + d;
        std::printf("criterion %2d: %s  %-28s [%6.1f s]  %s\n", c.id, res.pass ? "PASS" : "FAIL",
                    c.title, clock.seconds(), detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && res.pass;
    }
    return all_pass ? 0 : 1;
}
