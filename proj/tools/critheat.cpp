// critheat: command-line front end for the solvers and experiments.
//
// Exit codes: 0 all declared tolerances pass, 1 a tolerance failed or the
// integrator gave up, 2 usage or configuration error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "critheat/closed_forms.hpp"
#include "critheat/config.hpp"
#include "critheat/error.hpp"
#include "critheat/experiments.hpp"
#include "critheat/fkpp_solver.hpp"
#include "critheat/io.hpp"
#include "critheat/params.hpp"
#include "critheat/radial_solver.hpp"
#include "critheat/transform.hpp"

namespace fs = std::filesystem;
using namespace critheat;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kToleranceFailure = 1;
constexpr int kUsageError = 2;

struct Globals {
    std::string config_path;
    std::string out_dir = ".";
    bool svg = false;
    std::optional<int> N;
    std::optional<double> p;
    std::optional<double> sigma;
};

RunConfig load_config(const Globals& g) {
    json doc = json::object();
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path, std::ios::binary);
        if (!in) throw ConfigError("", "cannot open config file " + g.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            doc = json::parse(ss.str());
        } catch (const json::parse_error& e) {
            throw ConfigError("", std::string("malformed JSON: ") + e.what());
        }
    }
    if (!doc.is_object()) throw ConfigError("/", "expected an object");
    if (g.N) doc["N"] = *g.N;
    if (g.p) doc["p"] = *g.p;
    if (g.sigma) doc["sigma"] = *g.sigma;
    return parse_config(doc);
}

fs::path out_path(const Globals& g, const std::string& name) { return fs::path(g.out_dir) / name; }

int finish(const ExperimentReport& report, const RunConfig& cfg, const Globals& g) {
    ExperimentReport r = report;
    r.digest = cfg.digest();
    json doc = r.to_json();
    doc["config"] = cfg.to_json();
    write_json(doc, out_path(g, "report.json"));
    for (const auto& m : r.measurements) {
        std::cout << (m.pass ? "PASS " : "FAIL ") << m.name << " = " << format_real(m.value)
                  << "  in [" << (std::isfinite(m.lower) ? format_real(m.lower) : "-inf") << ", "
                  << (std::isfinite(m.upper) ? format_real(m.upper) : "inf") << "]\n";
    }
    for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
    return r.passed() ? kPass : kToleranceFailure;
}

void maybe_svg(const Globals& g, const std::string& csv, const PlotSpec& spec) {
    if (!g.svg) return;
    fs::path svg = out_path(g, csv);
    svg.replace_extension(".svg");
    emit_svg(out_path(g, csv), svg, spec);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw InvalidArgument("bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------

int cmd_derive(const Globals& g) {
    const RunConfig cfg = load_config(g);
    const DerivedConstants c = derive_constants(cfg.params);
    auto real = [](double v) -> Cell {
        if (std::isfinite(v)) return v;
        return std::string(v > 0 ? "inf" : "-inf");
    };
    Table t{{"N", "p", "sigma", "alpha", "K0", "K", "p_c", "p_s", "regime"}, {}};
    t.add_row({static_cast<long long>(cfg.params.N), cfg.params.p, cfg.params.sigma, c.alpha, c.K0,
               c.K, real(c.p_c), real(c.p_s), std::string(to_string(classify_regime(cfg.params)))});
    emit_csv(t, out_path(g, "derive.csv"));
    std::cout << to_csv(t);
    return kPass;
}

struct ClosedFormOptions {
    std::string which = "U";
    std::string grid;
    std::string times = "0";
    double mass = 1.0;
};

int cmd_closed_form(const Globals& g, const ClosedFormOptions& o) {
    const RunConfig cfg = load_config(g);
    const DerivedConstants c = derive_constants(cfg.params);
    const bool radial = o.which == "S" || o.which == "U";
    const std::string grid = !o.grid.empty() ? o.grid : (radial ? "0.05:20:400" : "-10:10:401");
    const auto parts = [&] {
        std::string s = grid;
        for (auto& ch : s) {
            if (ch == ':') ch = ',';
        }
        return parse_list(s);
    }();
    if (parts.size() != 3 || parts[2] < 2 || std::floor(parts[2]) != parts[2] ||
        !(parts[0] < parts[1])) {
        throw InvalidArgument("--grid expects lo:hi:n with lo < hi and n >= 2");
    }
    const auto n = static_cast<std::size_t>(parts[2]);
    std::vector<double> xs;
    if (radial) {
        if (!(parts[0] > 0.0)) throw InvalidArgument("radial grids need lo > 0");
        xs = log_spaced_radii(parts[0], parts[1], n);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            xs.push_back(parts[0] + (parts[1] - parts[0]) * static_cast<double>(i) /
                                        static_cast<double>(n - 1));
        }
    }
    Table t{{"r_or_z", "t", "value"}, {}};
    for (double time : parse_list(o.times)) {
        for (double x : xs) {
            double v = 0.0;
            if (o.which == "S") v = eval_S(x, c);
            else if (o.which == "pulse") v = eval_fisher_pulse(x, c);
            else if (o.which == "U") v = eval_U(x, time, c);
            else v = eval_gaussian(x, time, o.mass);
            t.add_row({x, time, v});
        }
    }
    emit_csv(t, out_path(g, "closed_form.csv"));
    maybe_svg(g, "closed_form.csv", {"r_or_z", "value", "t", o.which, false});
    return kPass;
}

int cmd_simulate(const Globals& g, const std::string& frame_flag) {
    RunConfig cfg = load_config(g);
    if (frame_flag == "fisher") cfg.frame = RunFrame::Fisher;
    else if (frame_flag == "radial") cfg.frame = RunFrame::Radial;
    else if (!frame_flag.empty()) throw ConfigError("--frame", "expected fisher or radial");
    const DerivedConstants c = derive_constants(cfg.params);
    const RadialProfile u0 = make_profile(cfg.initial, c);

    SolveOutcome out;
    const bool radial = cfg.frame == RunFrame::Radial;
    if (radial) {
        out = solve_radial(u0, c, cfg.radial_config(c));
    } else {
        const SolverConfig sc = cfg.solver_config(c);
        out = solve(map_initial(u0, c, sc.grid), c, sc);
    }
    emit_csv(trace_table(out.trace), out_path(g, "sup_trace.csv"));
    Table snaps = snapshot_table(out.snapshots, radial ? "r" : "z", radial);
    snaps.header[2] = radial ? "u" : "psi";
    emit_csv(snaps, out_path(g, "snapshots.csv"));

    json doc = outcome_json(out);
    const bool blew_up = out.status == Status::BlewUp;
    doc["t_star"] = blew_up ? json(out.t_end) : json(nullptr);
    const char* star = radial ? "r_star" : "z_star";
    doc[star] = blew_up && out.x_star ? json(radial ? std::exp(*out.x_star) : *out.x_star)
                                      : json(nullptr);
    doc.erase("x_star");
    doc["frame"] = radial ? "radial" : "fisher";
    doc["digest"] = cfg.digest();
    doc["config"] = cfg.to_json();
    write_json(doc, out_path(g, "outcome.json"));
    maybe_svg(g, "sup_trace.csv", {"t", "sup", "", "sup over the grid", true});
    std::cout << "status " << to_string(out.status) << " at t = " << format_real(out.t_end)
              << " after " << out.steps << " steps\n";
    return kPass;
}

struct ResidualOptions {
    std::string which = "U";
    int refinements = 3;
    std::size_t n0 = 501;
    double r_lo = 0.1;
    double r_hi = 10.0;
    double t = 0.7;
};

int cmd_residual(const Globals& g, const ResidualOptions& o) {
    const RunConfig cfg = load_config(g);
    const DerivedConstants c = derive_constants(cfg.params);
    if (o.refinements < 2) throw InvalidArgument("--refinements must be at least 2");
    const ClosedForm form =
        o.which == "S" ? ClosedForm::singular_stationary(c) : ClosedForm::eternal(c);
    if (o.which != "S" && o.which != "U") throw InvalidArgument("--which expects S or U");

    Table t{{"h", "sup_residual", "order"}, {}};
    ExperimentReport rep;
    rep.id = "residual-" + o.which;
    rep.params = cfg.params;
    std::size_t n = o.n0;
    double prev_h = 0.0, prev_res = 0.0;
    for (int k = 0; k < o.refinements; ++k) {
        const auto radii = log_spaced_radii(o.r_lo, o.r_hi, n);
        const double h = std::log(o.r_hi / o.r_lo) / static_cast<double>(n - 1);
        const double res = residual(form, radii, o.which == "S" ? 0.0 : o.t);
        Cell order = std::string("");
        if (k > 0) {
            const double q = std::log(prev_res / res) / std::log(prev_h / h);
            order = q;
            rep.add(Measurement::within("order n=" + std::to_string(n), q, 1.8, 2.2,
                                        "second-order central differences"));
        }
        t.add_row({h, res, order});
        prev_h = h;
        prev_res = res;
        n = 2 * n - 1;
    }
    emit_csv(t, out_path(g, "residual.csv"));
    std::cout << to_csv(t);
    return finish(rep, cfg, g);
}

int cmd_roundtrip(const Globals& g) {
    const RunConfig cfg = load_config(g);
    const DerivedConstants c = derive_constants(cfg.params);
    const RadialProfile u0 = make_profile(cfg.initial, c);

    ExperimentReport rep;
    rep.id = "roundtrip";
    rep.params = cfg.params;

    // Pure change of variables on the configured grid at a few times.
    const Grid1D grid(cfg.grid.lo, cfg.grid.hi, cfg.grid.n);
    std::vector<double> radii;
    for (std::size_t i = 0; i < grid.size(); ++i) radii.push_back(std::exp(grid.node(i)));
    double worst = 0.0;
    for (double time : {0.0, 0.5, 1.0, 2.0}) {
        std::vector<double> values;
        for (double r : radii) values.push_back(u0(r));
        const Field u = Field::radial(radii, values, time);
        const Field back = from_fisher(to_fisher(u, c), c);
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double scale = std::max(1.0, std::abs(u.values[i]));
            worst = std::max(worst, std::abs(back.values[i] - u.values[i]) / scale);
        }
    }
    rep.add(Measurement::within("roundtrip_relative_error", worst, 0.0, 1e-14,
                                "the change of variables is exactly invertible"));

    const EquivalenceResult eq = transform_equivalence(u0, c, equivalence_config(cfg));

    Table t{{"n", "h", "t", "gap"}, {}};
    for (const auto& level : eq.levels) {
        for (std::size_t k = 0; k < eq.times.size(); ++k) {
            t.add_row({static_cast<long long>(level.n), level.h, eq.times[k], level.gaps[k]});
        }
    }
    emit_csv(t, out_path(g, "equivalence.csv"));
    rep.add(Measurement::holds("statuses_agree", eq.statuses_agree,
                               "both paths solve the same problem"));
    rep.add(Measurement::within("gap_coarsest", eq.levels.front().gaps.back(), 0.0, 1e-3,
                                "discretization error of two consistent schemes"));
    for (std::size_t k = 0; k < eq.orders.size(); ++k) {
        const double ratio = std::pow(2.0, eq.orders[k]);
        rep.add(Measurement::within("gap_reduction_" + std::to_string(k), ratio, 3.0,
                                    std::numeric_limits<double>::infinity(),
                                    "O(h^2) agreement under grid halving"));
    }
    return finish(rep, cfg, g);
}

int cmd_classify(const Globals& g) {
    const RunConfig cfg = load_config(g);
    const DerivedConstants c = derive_constants(cfg.params);
    const SolverConfig base = cfg.solver_config(c);
    const double horizon = cfg.experiment.horizon.value_or(default_horizon(c));
    const auto cls = classify_datum(make_profile(cfg.initial, c), c, horizon, base);

    ExperimentReport rep;
    rep.id = "classify";
    rep.params = cfg.params;
    const auto& e = cfg.experiment.expectation;
    if (e == "blowup") {
        rep.add(Measurement::holds("blows_up", cls.status == Status::BlewUp, "configured expectation"));
    } else if (e == "no_blowup") {
        rep.add(Measurement::holds("no_blowup", cls.status != Status::BlewUp, "configured expectation"));
    }
    rep.notes.push_back("status: " + std::string(to_string(cls.status)) +
                        ", t_end = " + format_real(cls.outcome.t_end));
    rep.notes.push_back("regime: " + std::string(to_string(classify_regime(cfg.params))));
    emit_csv(trace_table(cls.outcome.trace), out_path(g, "sup_trace.csv"));
    maybe_svg(g, "sup_trace.csv", {"t", "sup", "", "sup over the grid", true});
    return finish(rep, cfg, g);
}

int cmd_separatrix(const Globals& g) {
    const RunConfig cfg = load_config(g);
    const DerivedConstants c = derive_constants(cfg.params);
    const SolverConfig base = cfg.base_solver();
    const auto& e = cfg.experiment;
    const SeparatrixResult s =
        separatrix_bisect(c, e.lambda_lo, e.lambda_hi, e.iterations, e.horizon, base);

    Table t{{"lambda", "status", "t_end"}, {}};
    for (const auto& h : s.history) {
        t.add_row({h.lambda, std::string(to_string(h.status)), h.t_end});
    }
    emit_csv(t, out_path(g, "separatrix.csv"));

    ExperimentReport rep;
    rep.id = "separatrix";
    rep.params = cfg.params;
    rep.add(Measurement::within("lambda_star", s.lambda_star, 0.9, 1.1,
                                "U separates decay from blow-up, so the threshold sits at 1"));
    rep.add(Measurement::within("bracket_width", s.width(), 0.0,
                                (e.lambda_hi - e.lambda_lo) / std::ldexp(1.0, e.iterations) *
                                    (1.0 + 1e-12),
                                "bisection halves the bracket each iteration"));
    return finish(rep, cfg, g);
}

int cmd_decay_fit(const Globals& g) {
    const RunConfig cfg = load_config(g);
    const DerivedConstants c = derive_constants(cfg.params);
    const double horizon = cfg.experiment.horizon.value_or(default_horizon(c));
    const auto cls = classify_datum(make_profile(cfg.initial, c), c, horizon, cfg.solver_config(c));
    emit_csv(trace_table(cls.outcome.trace), out_path(g, "sup_trace.csv"));
    maybe_svg(g, "sup_trace.csv", {"t", "sup", "", "sup over the grid", true});

    ExperimentReport rep;
    rep.id = "decay-fit";
    rep.params = cfg.params;
    const DecayFit fit = decay_rate_fit(cls.outcome.trace, cfg.experiment.window_fraction);
    const double a = -c.K0 * 1.05, b = -c.K0 * 0.95;
    rep.add(Measurement::within("slope", fit.slope, std::min(a, b), std::max(a, b),
                                "sup decays like exp(-K0 t)"));
    rep.add(Measurement::within("r_squared", fit.r_squared, 0.0, 1.0, "measured"));
    rep.add(Measurement::within("prefactor", fit.prefactor, 0.0,
                                std::numeric_limits<double>::infinity(), "measured"));
    rep.notes.push_back("status: " + std::string(to_string(cls.status)) + ", fit over t in [" +
                        format_real(fit.t_from) + ", " + format_real(fit.t_to) + "] with " +
                        std::to_string(fit.points) + " points");
    return finish(rep, cfg, g);
}

int cmd_gauss_check(const Globals& g) {
    const RunConfig cfg = load_config(g);
    const DerivedConstants c = derive_constants(cfg.params);
    const GaussCheckConfig gc = gauss_check_config(cfg, c);
    const GaussCheckResult res = gauss_check(c, gc);

    Table t{{"t", "D", "sup_G"}, {}};
    for (std::size_t i = 0; i < res.deviation.times.size(); ++i) {
        t.add_row({res.deviation.times[i], res.deviation.D[i], res.deviation.sup_G[i]});
    }
    emit_csv(t, out_path(g, "gauss.csv"));
    maybe_svg(g, "gauss.csv", {"t", "D", "", "Gaussian deviation", true});

    ExperimentReport rep;
    rep.id = "gauss-check";
    rep.params = cfg.params;
    rep.add(Measurement::within("mass_identity_gap", std::abs(res.mass.value - res.l1_check_grid), 0.0,
                                gc.mass_tolerance, "weighted mass equals the L1 norm of Psi0"));
    rep.add(Measurement::holds("D_decreasing", res.deviation.decreasing,
                               "t^(1/2) (e^(K0 t) Psi - G) -> 0"));
    const double final_d = res.deviation.D.empty() ? NAN : res.deviation.D.back();
    const double final_g = res.deviation.sup_G.empty() ? NAN : res.deviation.sup_G.back();
    rep.add(Measurement::within("final_D", final_d, 0.0, kGaussianFinalFraction * final_g,
                                "t^(1/2) (e^(K0 t) Psi - G) -> 0"));
    rep.notes.push_back("mass " + format_real(res.mass.value) + "; L1 on the solver grid " +
                        format_real(res.l1_solver_grid) + ", on the check grid (h = " +
                        format_real(res.check_spacing) + ") " + format_real(res.l1_check_grid));
    return finish(rep, cfg, g);
}

int cmd_sigma2(const Globals& g) {
    const RunConfig cfg = load_config(g);
    return finish(sigma_minus2_suite(cfg.params, sigma2_config(cfg)), cfg, g);
}

int cmd_pc_case(const Globals& g) {
    const RunConfig cfg = load_config(g);
    return finish(critical_pc_suite(cfg.params, critical_pc_config(cfg)), cfg, g);
}

int cmd_sweep(const Globals& g) {
    const RunConfig cfg = load_config(g);
    const SolverConfig base = cfg.base_solver();
    const auto rows = fujita_sweep(cfg.experiment.sweep, cfg.experiment.horizon, base);
    Table t{{"N", "p", "sigma", "regime", "K0", "datum", "status", "t_end"}, {}};
    for (const auto& r : rows) {
        t.add_row({static_cast<long long>(r.params.N), r.params.p, r.params.sigma,
                   std::string(to_string(r.regime)), r.K0, r.datum,
                   std::string(to_string(r.status)), r.t_end});
    }
    emit_csv(t, out_path(g, "sweep.csv"));
    return finish(sweep_report(rows), cfg, g);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"critheat: weighted critical heat equation and its Fisher-KPP form"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config_path, "JSON run configuration");
    app.add_option("--out", g.out_dir, "output directory (created if missing)");
    app.add_flag("--svg", g.svg, "also render SVG plots of the emitted CSV tables");
    app.add_option("--N", g.N, "dimension (overrides the config)");
    app.add_option("--p", g.p, "exponent p (overrides the config)");
    app.add_option("--sigma", g.sigma, "weight exponent sigma (overrides the config)");

    int rc = kPass;
    auto* derive = app.add_subcommand("derive", "print the derived constants as CSV");
    derive->callback([&] { rc = cmd_derive(g); });

    ClosedFormOptions cf;
    auto* closed = app.add_subcommand("closed-form", "sample S, the pulse, U or the Gaussian kernel");
    closed->add_option("--which", cf.which)->check(CLI::IsMember({"S", "pulse", "U", "gauss"}));
    closed->add_option("--grid", cf.grid, "lo:hi:n (radial for S and U, z for pulse and gauss)");
    closed->add_option("--times", cf.times, "comma separated times");
    closed->add_option("--mass", cf.mass, "Gaussian mass");
    closed->callback([&] { rc = cmd_closed_form(g, cf); });

    std::string frame;
    auto* sim = app.add_subcommand("simulate", "run one solve and write trace, snapshots, outcome");
    sim->add_option("--frame", frame)->check(CLI::IsMember({"fisher", "radial"}));
    sim->callback([&] { rc = cmd_simulate(g, frame); });

    ResidualOptions ro;
    auto* res = app.add_subcommand("residual", "PDE residual of S or U under grid refinement");
    res->add_option("--which", ro.which)->check(CLI::IsMember({"S", "U"}));
    res->add_option("--refinements", ro.refinements);
    res->add_option("--n0", ro.n0);
    res->add_option("--t", ro.t, "time at which U is checked");
    res->callback([&] { rc = cmd_residual(g, ro); });

    app.add_subcommand("roundtrip", "transform identity and radial/Fisher agreement")
        ->callback([&] { rc = cmd_roundtrip(g); });
    app.add_subcommand("classify", "blow-up / decay classification of one datum")
        ->callback([&] { rc = cmd_classify(g); });
    app.add_subcommand("separatrix", "bisection on lambda * U(., 0)")
        ->callback([&] { rc = cmd_separatrix(g); });
    app.add_subcommand("decay-fit", "exponential decay rate of sup")
        ->callback([&] { rc = cmd_decay_fit(g); });
    app.add_subcommand("gauss-check", "convergence to the Gaussian kernel")
        ->callback([&] { rc = cmd_gauss_check(g); });
    app.add_subcommand("sigma2", "sigma = -2 scenarios")->callback([&] { rc = cmd_sigma2(g); });
    app.add_subcommand("pc-case", "critical case p = p_c")->callback([&] { rc = cmd_pc_case(g); });
    app.add_subcommand("sweep", "classification sweep over parameter sets")
        ->callback([&] { rc = cmd_sweep(g); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsageError;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kUsageError;
    } catch (const BracketInvalid& e) {
        std::cerr << "invalid bracket: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kToleranceFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kToleranceFailure;
    }
    return rc;
}
