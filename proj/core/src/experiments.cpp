#include "critheat/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "critheat/closed_forms.hpp"
#include "critheat/error.hpp"
#include "critheat/radial_solver.hpp"

namespace critheat {
namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

SolverConfig with_far_field(const SolverConfig& base, const Field& psi0, const DerivedConstants& c,
                            double horizon) {
    SolverConfig cfg = base;
    cfg.time.t_max = horizon;
    cfg.left = far_field(psi0.values.front(), c);
    cfg.right = far_field(psi0.values.back(), c);
    return cfg;
}

bool non_increasing(const std::vector<TracePoint>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].sup > trace[i - 1].sup * (1.0 + 1e-12)) return false;
    }
    return true;
}

}  // namespace

Measurement Measurement::within(std::string name, double value, double lower, double upper,
                                std::string provenance) {
    Measurement m;
    m.name = std::move(name);
    m.value = value;
    m.lower = lower;
    m.upper = upper;
    m.pass = std::isfinite(value) && value >= lower && value <= upper;
    m.provenance = std::move(provenance);
    return m;
}

Measurement Measurement::holds(std::string name, bool value, std::string provenance) {
    Measurement m = within(std::move(name), value ? 1.0 : 0.0, 1.0, 1.0, std::move(provenance));
    return m;
}

bool ExperimentReport::passed() const {
    return std::all_of(measurements.begin(), measurements.end(),
                       [](const Measurement& m) { return m.pass; });
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["params"] = {{"N", params.N}, {"p", params.p}, {"sigma", params.sigma}};
    j["digest"] = digest;
    j["passed"] = passed();
    auto bound = [](double v) -> nlohmann::json {
        if (std::isfinite(v)) return v;
        if (std::isnan(v)) return "nan";
        return v > 0 ? "inf" : "-inf";
    };
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : measurements) {
        ms.push_back({{"name", m.name},
                      {"value", bound(m.value)},
                      {"lower", bound(m.lower)},
                      {"upper", bound(m.upper)},
                      {"pass", m.pass},
                      {"provenance", m.provenance}});
    }
    j["measurements"] = std::move(ms);
    j["notes"] = notes;
    return j;
}

double default_horizon(const DerivedConstants& c) {
    return 50.0 / std::max(std::abs(c.K0), 0.1);
}

BoundaryValue far_field(double edge_value, const DerivedConstants& c) {
    if (edge_value == 0.0) return BoundaryValue::zero();
    return BoundaryValue::homogeneous_ode(edge_value, c.K0, c.params.p);
}

Classification classify_datum(const RadialProfile& u0, const DerivedConstants& c, double horizon,
                              const SolverConfig& base) {
    if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");
    const Field psi0 = map_initial(u0, c, base.grid);
    const SolverConfig cfg = with_far_field(base, psi0, c, horizon);
    Classification out;
    out.outcome = solve(psi0, c, cfg);
    out.status = out.outcome.status;
    return out;
}

// ---------------------------------------------------------------------------

SeparatrixResult separatrix_bisect(const DerivedConstants& c, double lambda_lo, double lambda_hi,
                                   int iterations, std::optional<double> horizon,
                                   const SolverConfig& base) {
    if (!(c.K0 > 0.0)) throw InvalidArgument("separatrix bisection needs K0 > 0");
    if (!(lambda_lo > 0.0) || !(lambda_lo < lambda_hi)) {
        throw InvalidArgument("need 0 < lambda_lo < lambda_hi");
    }
    if (iterations < 0) throw InvalidArgument("iterations must be non-negative");
    const double t_max = horizon.value_or(default_horizon(c));

    SeparatrixResult result;
    auto run = [&](double lambda) {
        auto cls = classify_datum(make_profile(ScaledUDatum{lambda}, c), c, t_max, base);
        result.history.push_back({lambda, cls.status, cls.outcome.t_end});
        return cls.status;
    };

    const Status s_lo = run(lambda_lo);
    const Status s_hi = run(lambda_hi);
    if (s_lo == Status::Undetermined || s_hi == Status::Undetermined) {
        throw BracketInvalid("bracket endpoint undetermined at the horizon; raise the horizon");
    }
    if (s_lo != Status::Decayed || s_hi != Status::BlewUp) {
        throw BracketInvalid("bracket endpoints must decay (lambda_lo) and blow up (lambda_hi); got " +
                             std::string(to_string(s_lo)) + " and " + std::string(to_string(s_hi)));
    }

    result.lo = lambda_lo;
    result.hi = lambda_hi;
    for (int k = 0; k < iterations; ++k) {
        const double mid = 0.5 * (result.lo + result.hi);
        const Status s = run(mid);
        if (s == Status::Undetermined) {
            throw NumericalError("lambda = " + format_double(mid) +
                                 " undetermined at the horizon; raise the horizon");
        }
        (s == Status::BlewUp ? result.hi : result.lo) = mid;
        ++result.iterations;
    }
    result.lambda_star = 0.5 * (result.lo + result.hi);
    return result;
}

// ---------------------------------------------------------------------------

DecayFit decay_rate_fit(std::span<const TracePoint> trace, double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
        throw InvalidArgument("window fraction must lie in (0, 1]");
    }
    if (trace.empty()) throw InvalidArgument("empty trace");
    const double t0 = trace.front().t;
    const double t1 = trace.back().t;
    const double from = t1 - window_fraction * (t1 - t0);

    DecayFit fit;
    fit.t_from = from;
    fit.t_to = t1;
    std::vector<double> ts, ys;
    for (const auto& pt : trace) {
        if (pt.t < from) continue;
        if (!(pt.sup > 0.0)) throw InvalidArgument("non-positive sup in the fit window");
        ts.push_back(pt.t);
        ys.push_back(std::log(pt.sup));
    }
    fit.points = ts.size();
    if (fit.points < kMinFitPoints) {
        throw InvalidArgument("decay fit needs at least " + std::to_string(kMinFitPoints) +
                              " trace points in the window");
    }
    // Two passes. The ordinates are measured from the first sample, so a
    // constant trace has identically zero deviations and slope exactly 0.
    const double n = static_cast<double>(fit.points);
    const double y0 = ys.front();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        mx += ts[i];
        my += ys[i] - y0;
    }
    mx /= n;
    my /= n;
    double cxx = 0.0, cxy = 0.0, cyy = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double dx = ts[i] - mx;
        const double dy = (ys[i] - y0) - my;
        cxx += dx * dx;
        cxy += dx * dy;
        cyy += dy * dy;
    }
    if (!(cxx > 0.0)) throw InvalidArgument("fit window has no time extent");
    fit.slope = cxy / cxx;
    fit.prefactor = std::exp(y0 + my - fit.slope * mx);
    fit.r_squared = cyy > 0.0 ? std::clamp(cxy * cxy / (cxx * cyy), 0.0, 1.0) : 1.0;
    fit.decaying = fit.slope < 0.0;
    return fit;
}

// ---------------------------------------------------------------------------

GaussianDeviation gaussian_profile_deviation(std::span<const Field> snapshots,
                                             const DerivedConstants& c, double mass, double z_lo,
                                             double z_hi) {
    if (!std::isfinite(mass) || !(mass > 0.0)) {
        throw InvalidArgument("Gaussian comparison needs a finite positive mass");
    }
    GaussianDeviation dev;
    for (const Field& f : snapshots) {
        if (!(f.t > 0.0)) throw InvalidArgument("snapshot times must be positive");
        const double growth = std::exp(c.K0 * f.t);
        double d = 0.0, g_sup = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double z = f.grid.node(i);
            if (z < z_lo || z > z_hi) continue;
            const double g = eval_gaussian(z, f.t, mass);
            g_sup = std::max(g_sup, g);
            d = std::max(d, std::abs(growth * f.values[i] - g));
        }
        dev.times.push_back(f.t);
        dev.D.push_back(std::sqrt(f.t) * d);
        dev.sup_G.push_back(g_sup);
    }
    const std::size_t m = dev.D.size();
    if (m >= 2) {
        dev.decreasing = true;
        for (std::size_t i = (m >= 3 ? m - 3 : 0); i + 1 < m; ++i) {
            if (!(dev.D[i + 1] < dev.D[i])) dev.decreasing = false;
        }
    }
    if (m >= 1) dev.small = dev.D.back() < kGaussianFinalFraction * dev.sup_G.back();
    return dev;
}

GaussCheckResult gauss_check(const DerivedConstants& c, const GaussCheckConfig& config) {
    if (config.times.empty()) throw InvalidArgument("gauss check needs snapshot times");
    if (config.mass_refinements < 0) throw InvalidArgument("mass_refinements must be >= 0");
    const RadialProfile u0 = make_profile(config.datum, c);

    GaussCheckResult res;
    res.mass = weighted_mass(u0, c);
    if (res.mass.divergent) throw InvalidArgument("weighted mass of the datum is infinite");

    const Field psi0 = map_initial(u0, c, config.solver.grid);
    res.l1_solver_grid = l1_norm(psi0);
    Grid1D check = config.solver.grid;
    for (int k = 0; k < config.mass_refinements; ++k) check = check.refined();
    res.check_spacing = check.spacing();
    res.l1_check_grid = l1_norm(map_initial(u0, c, check));

    SolverConfig cfg = with_far_field(config.solver, psi0, c,
                                      *std::max_element(config.times.begin(), config.times.end()));
    cfg.time.snapshot_times = config.times;
    res.outcome = solve(psi0, c, cfg);
    res.deviation = gaussian_profile_deviation(res.outcome.snapshots, c, res.mass.value);
    return res;
}

// ---------------------------------------------------------------------------

EquivalenceResult transform_equivalence(const RadialProfile& u0, const DerivedConstants& c,
                                        const EquivalenceConfig& config) {
    if (config.resolutions.empty() || config.times.empty()) {
        throw InvalidArgument("equivalence needs resolutions and snapshot times");
    }
    if (!(config.y_lo <= config.window_lo && config.window_lo < config.window_hi &&
          config.window_hi <= config.y_hi)) {
        throw InvalidArgument("comparison window must lie inside the solver window");
    }
    EquivalenceResult out;
    out.times = config.times;
    const double t_max = *std::max_element(config.times.begin(), config.times.end());

    for (std::size_t n : config.resolutions) {
        EquivalenceLevel level;
        level.n = n;

        SolverConfig fc;
        fc.grid = Grid1D(config.y_lo, config.y_hi, n);
        fc.time = config.time;
        fc.time.t_max = t_max;
        fc.time.snapshot_times = config.times;
        level.h = fc.grid.spacing();

        RadialConfig rc;
        rc.r_lo = std::exp(config.y_lo);
        rc.r_hi = std::exp(config.y_hi);
        rc.n = n;
        rc.time = fc.time;

        auto fisher_run = std::async(std::launch::async,
                                     [&] { return solve(map_initial(u0, c, fc.grid), c, fc); });
        const SolveOutcome radial = solve_radial(u0, c, rc);
        const SolveOutcome fisher = fisher_run.get();
        level.fisher_status = fisher.status;
        level.radial_status = radial.status;
        if (fisher.status != radial.status) out.statuses_agree = false;

        for (double t : config.times) {
            auto at = [t](const std::vector<Field>& snaps) -> const Field* {
                for (const auto& f : snaps) {
                    if (std::abs(f.t - t) <= 1e-12 * std::max(1.0, t)) return &f;
                }
                return nullptr;
            };
            const Field* fs = at(fisher.snapshots);
            const Field* rs = at(radial.snapshots);
            // A run that decayed before t is taken to be zero from then on.
            const bool fisher_zero = fs == nullptr && fisher.status == Status::Decayed;
            const bool radial_zero = rs == nullptr && radial.status == Status::Decayed;
            if ((fs == nullptr && !fisher_zero) || (rs == nullptr && !radial_zero)) {
                level.gaps.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            const Grid1D window_grid = rs != nullptr ? rs->grid : Grid1D(config.y_lo, config.y_hi, n);
            double gap = 0.0;
            for (std::size_t i = 0; i < window_grid.size(); ++i) {
                const double y = window_grid.node(i);
                if (y < config.window_lo || y > config.window_hi) continue;
                const double u_fisher =
                    fisher_zero ? 0.0 : std::exp(-c.alpha * y) * interpolate(*fs, y + c.K * t);
                const double u_radial = radial_zero ? 0.0 : rs->values[i];
                gap = std::max(gap, std::abs(u_fisher - u_radial));
            }
            level.gaps.push_back(gap);
        }
        out.levels.push_back(std::move(level));
    }

    for (std::size_t k = 0; k + 1 < out.levels.size(); ++k) {
        const double g0 = out.levels[k].gaps.back();
        const double g1 = out.levels[k + 1].gaps.back();
        const double ratio_h = out.levels[k].h / out.levels[k + 1].h;
        out.orders.push_back(std::log(g0 / g1) / std::log(ratio_h));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Sigma2Scenario s) {
    return s == Sigma2Scenario::PlateauA ? "PlateauA" : "SupportedAway";
}

ExperimentReport sigma_minus2_suite(const ProblemParams& params, const Sigma2Config& config) {
    if (params.sigma != -2.0) {
        throw InvalidArgument("the sigma = -2 suite needs sigma = -2");
    }
    const DerivedConstants c = derive_constants(params);
    ExperimentReport rep;
    rep.id = "sigma2-" + std::string(to_string(config.scenario));
    rep.params = params;

    if (config.scenario == Sigma2Scenario::PlateauA) {
        const double A = config.plateau.A;
        const auto cls =
            classify_datum(make_profile(config.plateau, c), c, config.horizon, config.solver);
        const auto& out = cls.outcome;
        rep.add(Measurement::holds("blows_up", out.status == Status::BlewUp,
                                   "monotone plateau data blow up, only at the origin"));
        if (out.status == Status::BlewUp && out.x_star && out.final_field) {
            const Grid1D& g = config.solver.grid;
            const double share = (*out.x_star - g.lo()) / (g.hi() - g.lo());
            rep.add(Measurement::within("argmax_window_share", share, 0.0, config.edge_fraction,
                                        "blow-up point sits at r -> 0, the left end in z"));
            const double z_interior = std::log(config.r_interior) + c.K * out.t_end;
            double interior = 0.0;
            const Field& f = *out.final_field;
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (f.grid.node(i) >= z_interior) {
                    interior = std::max(interior, std::exp(-c.alpha * f.grid.node(i)) * f.values[i]);
                }
            }
            rep.add(Measurement::within("interior_sup_at_t_star", interior, 0.0,
                                        config.interior_factor * A,
                                        "u stays bounded on r >= r_interior while the origin blows up"));
            rep.add(Measurement::within("t_star", out.t_end, 0.0, config.horizon, "measured"));
        }
        rep.notes.push_back("status: " + std::string(to_string(out.status)));
        return rep;
    }

    const double q_c = (params.p - 1.0) / 2.0;
    const double q = config.q.value_or(q_c);
    const RadialProfile u0 = make_profile(config.datum, c);
    rep.add(Measurement::within("q", q, q_c, std::numeric_limits<double>::infinity(),
                                "configured power at or above q_c = (p - 1) / 2"));
    const WeightedMass integral = log_power_integral(u0, q);
    rep.add(Measurement::within("integral_u0_pow_q_over_r", integral.value, 0.0,
                                std::numeric_limits<double>::max(),
                                "weighted integrability hypothesis, by quadrature"));

    const Grid1D& g = config.solver.grid;
    const double z_probe0 = config.r_probe ? std::log(*config.r_probe) : g.lo();
    if (!g.contains(z_probe0) || !g.contains(z_probe0 + c.K * config.horizon)) {
        throw InvalidArgument("probe radius leaves the grid before the horizon");
    }
    if (!(config.probe_interval > 0.0)) throw InvalidArgument("probe_interval must be positive");

    SolverConfig base = config.solver;
    const auto steps = static_cast<std::size_t>(std::floor(config.horizon / config.probe_interval));
    base.time.snapshot_times.clear();
    for (std::size_t k = 1; k <= steps; ++k) {
        base.time.snapshot_times.push_back(static_cast<double>(k) * config.probe_interval);
    }
    const Field psi0 = map_initial(u0, c, g);
    const auto cls = classify_datum(u0, c, config.horizon, base);
    const auto& out = cls.outcome;

    auto probe = [&](const Field& f) {
        const double z = z_probe0 + c.K * f.t;
        return std::exp(-c.alpha * z_probe0) * interpolate(f, z);
    };
    double worst = probe(psi0);
    for (const auto& f : out.snapshots) worst = std::max(worst, probe(f));
    rep.add(Measurement::within("origin_trace_max", worst, 0.0, config.probe_tolerance,
                                "u(0, t) = 0 before blow-up, probed at r_lo"));
    rep.add(Measurement::within("probe_samples", static_cast<double>(out.snapshots.size() + 1), 1.0,
                                std::numeric_limits<double>::infinity(), "measured"));
    if (sup_norm(psi0) == 0.0) {
        rep.add(Measurement::holds("trivial_datum_decays", out.status == Status::Decayed,
                                   "zero data stay zero"));
    }
    rep.notes.push_back("status: " + std::string(to_string(out.status)) +
                        ", t_end = " + format_double(out.t_end));
    return rep;
}

// ---------------------------------------------------------------------------

PcExpectation expected_pc_outcome(const DerivedConstants& c, double psi0_sup,
                                  const CriticalPcConfig& config) {
    if (config.expectation != PcExpectation::Auto) return config.expectation;
    if (psi0_sup == 0.0) return PcExpectation::NoBlowup;
    const auto& prm = c.params;
    if (prm.sigma <= 2.0 * (prm.N - 3)) return PcExpectation::Blowup;
    if (psi0_sup <= config.small_amplitude) return PcExpectation::NoBlowup;
    if (psi0_sup >= config.large_amplitude) return PcExpectation::Blowup;
    return PcExpectation::None;
}

ExperimentReport critical_pc_suite(const ProblemParams& params, const CriticalPcConfig& config) {
    if (params.N < 3 || !(params.sigma > -2.0)) {
        throw InvalidArgument("the p = p_c suite needs N >= 3 and sigma > -2");
    }
    if (!is_critical_fujita(params)) throw InvalidArgument("p must equal p_c");
    const DerivedConstants c = derive_constants(params);
    const RadialProfile u0 = make_profile(config.datum, c);
    const double sup0 = sup_norm(map_initial(u0, c, config.solver.grid));
    const PcExpectation expect = expected_pc_outcome(c, sup0, config);

    ExperimentReport rep;
    rep.id = "pc-case";
    rep.params = params;
    const auto cls = classify_datum(u0, c, config.horizon, config.solver);
    const auto& out = cls.outcome;
    rep.add(Measurement::within("psi0_sup", sup0, 0.0, std::numeric_limits<double>::infinity(),
                                "measured"));
    switch (expect) {
        case PcExpectation::Blowup:
            rep.add(Measurement::holds("blows_up", out.status == Status::BlewUp,
                                       params.sigma <= 2.0 * (params.N - 3)
                                           ? "p_c <= 3: every nontrivial datum blows up"
                                           : "p_c > 3: large data blow up"));
            break;
        case PcExpectation::NoBlowup:
            rep.add(Measurement::holds("no_blowup_by_horizon", out.status != Status::BlewUp,
                                       "p_c > 3: small data are global"));
            rep.add(Measurement::holds("sup_non_increasing", non_increasing(out.trace),
                                       "p_c > 3: small data are global"));
            rep.notes.push_back(
                "no blow-up by t_max with decreasing sup; a finite horizon cannot establish global "
                "existence");
            break;
        case PcExpectation::None:
        case PcExpectation::Auto:
            rep.notes.push_back("intermediate datum: no expected outcome");
            break;
    }
    rep.notes.push_back("status: " + std::string(to_string(out.status)) +
                        ", t_end = " + format_double(out.t_end));
    return rep;
}

// ---------------------------------------------------------------------------

std::vector<SweepRow> fujita_sweep(std::span<const SweepEntry> entries,
                                   std::optional<double> horizon, const SolverConfig& base) {
    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(entries.size());
    for (const SweepEntry& e : entries) {
        jobs.push_back(std::async(std::launch::async, [e, horizon, &base] {
            const DerivedConstants c = derive_constants(e.params);
            SweepRow row;
            row.params = e.params;
            row.regime = classify_regime(e.params);
            row.K0 = c.K0;
            row.datum = kind_name(e.datum);
            const auto cls = classify_datum(make_profile(e.datum, c), c,
                                            horizon.value_or(default_horizon(c)), base);
            row.status = cls.status;
            row.t_end = cls.outcome.t_end;
            return row;
        }));
    }
    std::vector<SweepRow> rows;
    rows.reserve(jobs.size());
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

ExperimentReport sweep_report(std::span<const SweepRow> rows) {
    ExperimentReport rep;
    rep.id = "sweep";
    if (!rows.empty()) rep.params = rows.front().params;
    std::map<std::tuple<int, double, double>, bool> decays;
    for (const auto& r : rows) {
        const std::string label = "N=" + std::to_string(r.params.N) + " p=" +
                                  format_double(r.params.p) + " sigma=" +
                                  format_double(r.params.sigma) + " " + r.datum;
        if (r.K0 < 0.0) {
            rep.add(Measurement::holds("blowup " + label, r.status == Status::BlewUp,
                                       "K0 < 0: every nontrivial datum blows up"));
        } else if (r.K0 > 0.0) {
            auto& seen = decays[{r.params.N, r.params.p, r.params.sigma}];
            seen = seen || r.status == Status::Decayed;
        }
    }
    for (const auto& [key, seen] : decays) {
        const auto& [N, p, sigma] = key;
        rep.add(Measurement::holds("some decay N=" + std::to_string(N) + " p=" + format_double(p) +
                                       " sigma=" + format_double(sigma),
                                   seen, "K0 > 0: data below S decay"));
    }
    return rep;
}

}  // namespace critheat
