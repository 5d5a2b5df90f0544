#include "critheat/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "critheat/closed_forms.hpp"
#include "critheat/error.hpp"
#include "critheat/transform.hpp"

namespace critheat {
namespace {

using nlohmann::json;

// Walks one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
        if (!doc_.is_object()) throw ConfigError(path_.empty() ? "/" : path_, "expected an object");
    }

    bool has(const std::string& key) const { return doc_.contains(key); }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return doc_.at(key);
    }

    std::string child(const std::string& key) const { return path_ + "/" + key; }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        return as_number(raw(key), child(key));
    }

    double required_number(const std::string& key) {
        if (!has(key)) throw ConfigError(child(key), "required key missing");
        return as_number(raw(key), child(key));
    }

    std::optional<double> optional_number(const std::string& key) {
        if (!has(key) || raw(key).is_null()) return std::nullopt;
        return as_number(raw(key), child(key));
    }

    long long integer(const std::string& key, long long fallback) {
        if (!has(key)) return fallback;
        return as_integer(raw(key), child(key));
    }

    std::string string(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_string()) throw ConfigError(child(key), "expected a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_array()) throw ConfigError(child(key), "expected an array");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(as_number(v[i], child(key) + "/" + std::to_string(i)));
        }
        return out;
    }

    void finish() const {
        for (const auto& [key, value] : doc_.items()) {
            if (!seen_.count(key)) throw ConfigError(child(key), "unknown key");
        }
    }

    static double as_number(const json& v, const std::string& path) {
        if (!v.is_number()) throw ConfigError(path, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(path, "expected a finite number");
        return d;
    }

    static long long as_integer(const json& v, const std::string& path) {
        if (v.is_number_integer()) return v.get<long long>();
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<long long>(d);
        }
        throw ConfigError(path, "expected an integer");
    }

private:
    const json& doc_;
    std::string path_;
    std::set<std::string> seen_;
};

// Runs a validator from the numerical layer and re-labels its error with a path.
template <class F>
void checked(const std::string& path, F&& f) {
    try {
        f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
}

BoundarySpec parse_boundary(const json& v, const std::string& path) {
    BoundarySpec b;
    if (v.is_number()) {
        b.kind = BoundarySpec::Kind::Constant;
        b.value = ObjectReader::as_number(v, path);
        if (b.value < 0.0) throw ConfigError(path, "boundary value must be non-negative");
        return b;
    }
    if (!v.is_string()) throw ConfigError(path, "expected a number or one of zero|far_field|exact_U");
    const auto s = v.get<std::string>();
    if (s == "zero") b.kind = BoundarySpec::Kind::Zero;
    else if (s == "far_field") b.kind = BoundarySpec::Kind::FarField;
    else if (s == "exact_U") b.kind = BoundarySpec::Kind::ExactU;
    else throw ConfigError(path, "unknown boundary kind '" + s + "'");
    return b;
}

json boundary_to_json(const BoundarySpec& b) {
    switch (b.kind) {
        case BoundarySpec::Kind::Zero: return "zero";
        case BoundarySpec::Kind::Constant: return b.value;
        case BoundarySpec::Kind::FarField: return "far_field";
        case BoundarySpec::Kind::ExactU: return "exact_U";
    }
    return "zero";
}

json optional_to_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

ExperimentOptions parse_experiment(const json& doc, const std::string& path) {
    ExperimentOptions e;
    ObjectReader r(doc, path);
    e.horizon = r.optional_number("horizon");
    if (e.horizon && !(*e.horizon > 0.0)) throw ConfigError(r.child("horizon"), "must be positive");
    e.lambda_lo = r.number("lambda_lo", e.lambda_lo);
    e.lambda_hi = r.number("lambda_hi", e.lambda_hi);
    if (!(e.lambda_lo > 0.0 && e.lambda_lo < e.lambda_hi)) {
        throw ConfigError(r.child("lambda_lo"), "need 0 < lambda_lo < lambda_hi");
    }
    e.iterations = static_cast<int>(r.integer("iterations", e.iterations));
    if (e.iterations < 0 || e.iterations > 60) {
        throw ConfigError(r.child("iterations"), "must lie in [0, 60]");
    }
    e.window_fraction = r.number("window_fraction", e.window_fraction);
    if (!(e.window_fraction > 0.0 && e.window_fraction <= 1.0)) {
        throw ConfigError(r.child("window_fraction"), "must lie in (0, 1]");
    }
    e.mass_refinements = static_cast<int>(r.integer("mass_refinements", e.mass_refinements));
    if (e.mass_refinements < 0 || e.mass_refinements > 6) {
        throw ConfigError(r.child("mass_refinements"), "must lie in [0, 6]");
    }
    e.mass_tolerance = r.number("mass_tolerance", e.mass_tolerance);
    if (r.has("resolutions")) {
        const json& v = r.raw("resolutions");
        if (!v.is_array() || v.empty()) throw ConfigError(r.child("resolutions"), "expected a non-empty array");
        e.resolutions.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const long long n = ObjectReader::as_integer(v[i], r.child("resolutions") + "/" + std::to_string(i));
            if (n < 3) throw ConfigError(r.child("resolutions") + "/" + std::to_string(i), "need at least 3 nodes");
            e.resolutions.push_back(static_cast<std::size_t>(n));
        }
    }
    e.window_lo = r.number("window_lo", e.window_lo);
    e.window_hi = r.number("window_hi", e.window_hi);
    if (!(e.window_lo < e.window_hi)) throw ConfigError(r.child("window_lo"), "need window_lo < window_hi");
    e.scenario = r.string("scenario", e.scenario);
    if (e.scenario != "PlateauA" && e.scenario != "SupportedAway") {
        throw ConfigError(r.child("scenario"), "expected PlateauA or SupportedAway");
    }
    e.q = r.optional_number("q");
    e.r_interior = r.number("r_interior", e.r_interior);
    e.r_probe = r.optional_number("r_probe");
    if (!(e.r_interior > 0.0)) throw ConfigError(r.child("r_interior"), "must be positive");
    if (e.r_probe && !(*e.r_probe > 0.0)) throw ConfigError(r.child("r_probe"), "must be positive");
    e.probe_interval = r.number("probe_interval", e.probe_interval);
    if (!(e.probe_interval > 0.0)) throw ConfigError(r.child("probe_interval"), "must be positive");
    e.probe_tolerance = r.number("probe_tolerance", e.probe_tolerance);
    e.interior_factor = r.number("interior_factor", e.interior_factor);
    e.edge_fraction = r.number("edge_fraction", e.edge_fraction);
    e.expectation = r.string("expectation", e.expectation);
    if (e.expectation != "auto" && e.expectation != "blowup" && e.expectation != "no_blowup" &&
        e.expectation != "none") {
        throw ConfigError(r.child("expectation"), "expected auto|blowup|no_blowup|none");
    }
    e.small_amplitude = r.number("small_amplitude", e.small_amplitude);
    e.large_amplitude = r.number("large_amplitude", e.large_amplitude);
    if (r.has("sweep")) {
        const json& v = r.raw("sweep");
        if (!v.is_array()) throw ConfigError(r.child("sweep"), "expected an array");
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string p = r.child("sweep") + "/" + std::to_string(i);
            ObjectReader er(v[i], p);
            SweepEntry entry;
            entry.params.N = static_cast<int>(er.integer("N", 0));
            entry.params.p = er.required_number("p");
            entry.params.sigma = er.required_number("sigma");
            if (!er.has("N")) throw ConfigError(er.child("N"), "required key missing");
            checked(p, [&] { validate(entry.params); });
            entry.datum = er.has("initial") ? parse_initial(er.raw("initial"), er.child("initial"))
                                            : InitialSpec{BumpDatum{}};
            er.finish();
            e.sweep.push_back(std::move(entry));
        }
    }
    r.finish();
    return e;
}

json experiment_to_json(const ExperimentOptions& e) {
    json sweep = json::array();
    for (const auto& s : e.sweep) {
        sweep.push_back({{"N", s.params.N},
                         {"p", s.params.p},
                         {"sigma", s.params.sigma},
                         {"initial", initial_to_json(s.datum)}});
    }
    return {{"horizon", optional_to_json(e.horizon)},
            {"lambda_lo", e.lambda_lo},
            {"lambda_hi", e.lambda_hi},
            {"iterations", e.iterations},
            {"window_fraction", e.window_fraction},
            {"mass_refinements", e.mass_refinements},
            {"mass_tolerance", e.mass_tolerance},
            {"resolutions", e.resolutions},
            {"window_lo", e.window_lo},
            {"window_hi", e.window_hi},
            {"scenario", e.scenario},
            {"q", optional_to_json(e.q)},
            {"r_interior", e.r_interior},
            {"r_probe", optional_to_json(e.r_probe)},
            {"probe_interval", e.probe_interval},
            {"probe_tolerance", e.probe_tolerance},
            {"interior_factor", e.interior_factor},
            {"edge_fraction", e.edge_fraction},
            {"expectation", e.expectation},
            {"small_amplitude", e.small_amplitude},
            {"large_amplitude", e.large_amplitude},
            {"sweep", sweep}};
}

BoundaryValue make_boundary(const BoundarySpec& spec, const DerivedConstants& c, double edge_value,
                            double fisher_z, double radial_r, RunFrame frame) {
    switch (spec.kind) {
        case BoundarySpec::Kind::Zero: return BoundaryValue::zero();
        case BoundarySpec::Kind::Constant: return BoundaryValue::constant(spec.value);
        case BoundarySpec::Kind::FarField: return far_field(edge_value, c);
        case BoundarySpec::Kind::ExactU:
            if (frame == RunFrame::Fisher) {
                return BoundaryValue::constant(eval_fisher_pulse(fisher_z, c));
            }
            return BoundaryValue::function([c, radial_r](double t) { return eval_U(radial_r, t, c); },
                                           "U(r_edge, t)");
    }
    return BoundaryValue::zero();
}

}  // namespace

InitialSpec parse_initial(const json& doc, const std::string& path) {
    ObjectReader r(doc, path);
    const std::string kind = r.string("kind", "bump");
    InitialSpec spec;
    if (kind == "zero") {
        spec = ZeroDatum{};
    } else if (kind == "bump") {
        BumpDatum b;
        b.center = r.number("center", b.center);
        b.width = r.number("width", b.width);
        b.height = r.number("height", b.height);
        spec = b;
    } else if (kind == "scaled_U") {
        ScaledUDatum s;
        s.lambda = r.number("lambda", s.lambda);
        spec = s;
    } else if (kind == "capped_S") {
        CappedSDatum s;
        s.cap = r.number("cap", s.cap);
        s.fraction = r.number("fraction", s.fraction);
        spec = s;
    } else if (kind == "plateau") {
        PlateauDatum s;
        s.A = r.number("A", s.A);
        s.r_knee = r.number("r_knee", s.r_knee);
        spec = s;
    } else if (kind == "log_gaussian") {
        LogGaussianDatum s;
        s.amplitude = r.number("amplitude", s.amplitude);
        s.center = r.number("center", s.center);
        s.width = r.number("width", s.width);
        spec = s;
    } else {
        throw ConfigError(r.child("kind"),
                          "unknown initial kind '" + kind +
                              "' (zero|bump|scaled_U|capped_S|plateau|log_gaussian)");
    }
    r.finish();
    // Parameter sanity that does not depend on (N, p, sigma).
    checked(path, [&] {
        std::visit(
            [](const auto& d) {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, BumpDatum>) {
                    if (!(d.width > 0.0) || !(d.center - d.width >= 0.0) || d.height < 0.0) {
                        throw InvalidArgument("bump needs width > 0, center >= width, height >= 0");
                    }
                } else if constexpr (std::is_same_v<T, ScaledUDatum>) {
                    if (d.lambda < 0.0) throw InvalidArgument("lambda must be non-negative");
                } else if constexpr (std::is_same_v<T, CappedSDatum>) {
                    if (!(d.cap > 0.0) || !(d.fraction > 0.0 && d.fraction < 1.0)) {
                        throw InvalidArgument("capped_S needs cap > 0 and fraction in (0, 1)");
                    }
                } else if constexpr (std::is_same_v<T, PlateauDatum>) {
                    if (d.A < 0.0 || !(d.r_knee > 0.0)) {
                        throw InvalidArgument("plateau needs A >= 0 and r_knee > 0");
                    }
                } else if constexpr (std::is_same_v<T, LogGaussianDatum>) {
                    if (d.amplitude < 0.0 || !(d.width > 0.0)) {
                        throw InvalidArgument("log_gaussian needs amplitude >= 0 and width > 0");
                    }
                }
            },
            spec);
    });
    return spec;
}

json initial_to_json(const InitialSpec& spec) {
    json j;
    j["kind"] = kind_name(spec);
    std::visit(
        [&j](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, BumpDatum>) {
                j["center"] = d.center;
                j["width"] = d.width;
                j["height"] = d.height;
            } else if constexpr (std::is_same_v<T, ScaledUDatum>) {
                j["lambda"] = d.lambda;
            } else if constexpr (std::is_same_v<T, CappedSDatum>) {
                j["cap"] = d.cap;
                j["fraction"] = d.fraction;
            } else if constexpr (std::is_same_v<T, PlateauDatum>) {
                j["A"] = d.A;
                j["r_knee"] = d.r_knee;
            } else if constexpr (std::is_same_v<T, LogGaussianDatum>) {
                j["amplitude"] = d.amplitude;
                j["center"] = d.center;
                j["width"] = d.width;
            }
        },
        spec);
    return j;
}

RunConfig parse_config(const json& doc) {
    RunConfig cfg;
    ObjectReader r(doc, "");
    if (!r.has("N")) throw ConfigError("/N", "required key missing");
    cfg.params.N = static_cast<int>(r.integer("N", 0));
    cfg.params.p = r.required_number("p");
    cfg.params.sigma = r.required_number("sigma");
    checked("", [&] { validate(cfg.params); });

    const std::string frame = r.string("frame", "fisher");
    if (frame == "fisher") cfg.frame = RunFrame::Fisher;
    else if (frame == "radial") cfg.frame = RunFrame::Radial;
    else throw ConfigError("/frame", "expected fisher or radial");

    if (r.has("grid")) {
        ObjectReader g(r.raw("grid"), "/grid");
        if (cfg.frame == RunFrame::Fisher) {
            cfg.grid.lo = g.number("z_min", cfg.grid.lo);
            cfg.grid.hi = g.number("z_max", cfg.grid.hi);
        } else {
            const double r_lo = g.number("r_lo", std::exp(cfg.grid.lo));
            const double r_hi = g.number("r_hi", std::exp(cfg.grid.hi));
            if (!(r_lo > 0.0)) throw ConfigError("/grid/r_lo", "must be positive");
            cfg.grid.lo = std::log(r_lo);
            cfg.grid.hi = std::log(r_hi);
        }
        const long long n = g.integer("n", static_cast<long long>(cfg.grid.n));
        if (n < 3) throw ConfigError("/grid/n", "need at least 3 nodes");
        cfg.grid.n = static_cast<std::size_t>(n);
        g.finish();
    }
    if (!(cfg.grid.lo < cfg.grid.hi)) throw ConfigError("/grid", "need lower end < upper end");

    if (r.has("solver")) {
        ObjectReader s(r.raw("solver"), "/solver");
        auto& t = cfg.time;
        t.dt_init = s.number("dt_init", t.dt_init);
        t.dt_safety = s.number("dt_safety", t.dt_safety);
        t.t_max = s.number("t_max", t.t_max);
        t.blowup_threshold = s.number("blowup_threshold", t.blowup_threshold);
        t.decay_threshold = s.number("decay_threshold", t.decay_threshold);
        t.dt_min = s.number("dt_min", t.dt_min);
        const long long stride = s.integer("trace_stride", static_cast<long long>(t.trace_stride));
        if (stride < 1) throw ConfigError("/solver/trace_stride", "must be at least 1");
        t.trace_stride = static_cast<std::size_t>(stride);
        s.finish();
    }
    cfg.time.snapshot_times = r.numbers("snapshot_times", {});
    checked("/solver", [&] { cfg.time.validate(); });

    if (r.has("bc")) {
        ObjectReader b(r.raw("bc"), "/bc");
        if (b.has("left")) cfg.left = parse_boundary(b.raw("left"), "/bc/left");
        if (b.has("right")) cfg.right = parse_boundary(b.raw("right"), "/bc/right");
        b.finish();
    }
    for (const auto* side : {&cfg.left, &cfg.right}) {
        if (side->kind == BoundarySpec::Kind::FarField && cfg.frame == RunFrame::Radial) {
            throw ConfigError("/bc", "far_field boundaries are only available in the fisher frame");
        }
    }

    if (r.has("initial")) cfg.initial = parse_initial(r.raw("initial"), "/initial");
    if (r.has("experiment")) cfg.experiment = parse_experiment(r.raw("experiment"), "/experiment");
    r.finish();
    return cfg;
}

RunConfig parse_config_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

json RunConfig::to_json() const {
    json j;
    j["N"] = params.N;
    j["p"] = params.p;
    j["sigma"] = params.sigma;
    j["frame"] = frame == RunFrame::Fisher ? "fisher" : "radial";
    if (frame == RunFrame::Fisher) {
        j["grid"] = {{"z_min", grid.lo}, {"z_max", grid.hi}, {"n", grid.n}};
    } else {
        j["grid"] = {{"r_lo", std::exp(grid.lo)}, {"r_hi", std::exp(grid.hi)}, {"n", grid.n}};
    }
    j["solver"] = {{"dt_init", time.dt_init},
                   {"dt_safety", time.dt_safety},
                   {"t_max", time.t_max},
                   {"blowup_threshold", time.blowup_threshold},
                   {"decay_threshold", time.decay_threshold},
                   {"dt_min", time.dt_min},
                   {"trace_stride", time.trace_stride}};
    j["snapshot_times"] = time.snapshot_times;
    j["bc"] = {{"left", boundary_to_json(left)}, {"right", boundary_to_json(right)}};
    j["initial"] = initial_to_json(initial);
    j["experiment"] = experiment_to_json(experiment);
    return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string RunConfig::digest() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(to_json().dump())));
    return buf;
}

SolverConfig RunConfig::solver_config(const DerivedConstants& c) const {
    SolverConfig s;
    s.grid = Grid1D(grid.lo, grid.hi, grid.n);
    s.time = time;
    const Field psi0 = map_initial(make_profile(initial, c), c, s.grid);
    s.left = make_boundary(left, c, psi0.values.front(), grid.lo, 0.0, RunFrame::Fisher);
    s.right = make_boundary(right, c, psi0.values.back(), grid.hi, 0.0, RunFrame::Fisher);
    return s;
}

RadialConfig RunConfig::radial_config(const DerivedConstants& c) const {
    RadialConfig rc;
    rc.r_lo = std::exp(grid.lo);
    rc.r_hi = std::exp(grid.hi);
    rc.n = grid.n;
    rc.time = time;
    rc.inner = make_boundary(left, c, 0.0, 0.0, rc.r_lo, RunFrame::Radial);
    rc.outer = make_boundary(right, c, 0.0, 0.0, rc.r_hi, RunFrame::Radial);
    return rc;
}

SolverConfig RunConfig::base_solver() const {
    SolverConfig s;
    s.grid = Grid1D(grid.lo, grid.hi, grid.n);
    s.time = time;
    return s;
}

EquivalenceConfig equivalence_config(const RunConfig& cfg) {
    EquivalenceConfig ec;
    ec.y_lo = cfg.grid.lo;
    ec.y_hi = cfg.grid.hi;
    ec.resolutions = cfg.experiment.resolutions;
    ec.times = cfg.time.snapshot_times.empty() ? std::vector<double>{1.0} : cfg.time.snapshot_times;
    ec.window_lo = cfg.experiment.window_lo;
    ec.window_hi = cfg.experiment.window_hi;
    ec.time = cfg.time;
    return ec;
}

GaussCheckConfig gauss_check_config(const RunConfig& cfg, const DerivedConstants& c) {
    GaussCheckConfig gc;
    gc.datum = cfg.initial;
    if (!cfg.time.snapshot_times.empty()) gc.times = cfg.time.snapshot_times;
    gc.solver = cfg.solver_config(c);
    gc.mass_refinements = cfg.experiment.mass_refinements;
    gc.mass_tolerance = cfg.experiment.mass_tolerance;
    return gc;
}

Sigma2Config sigma2_config(const RunConfig& cfg) {
    const auto& e = cfg.experiment;
    Sigma2Config sc;
    sc.scenario = e.scenario == "PlateauA" ? Sigma2Scenario::PlateauA : Sigma2Scenario::SupportedAway;
    if (sc.scenario == Sigma2Scenario::PlateauA) {
        const auto* plateau = std::get_if<PlateauDatum>(&cfg.initial);
        if (!plateau) throw ConfigError("/initial/kind", "the PlateauA scenario needs a plateau datum");
        sc.plateau = *plateau;
    } else {
        sc.datum = cfg.initial;
    }
    sc.q = e.q;
    sc.r_interior = e.r_interior;
    sc.interior_factor = e.interior_factor;
    sc.edge_fraction = e.edge_fraction;
    sc.r_probe = e.r_probe;
    sc.probe_interval = e.probe_interval;
    sc.probe_tolerance = e.probe_tolerance;
    sc.horizon = e.horizon.value_or(sc.horizon);
    sc.solver = cfg.base_solver();
    return sc;
}

CriticalPcConfig critical_pc_config(const RunConfig& cfg) {
    const auto& e = cfg.experiment;
    CriticalPcConfig pc;
    pc.datum = cfg.initial;
    pc.horizon = e.horizon.value_or(pc.horizon);
    pc.small_amplitude = e.small_amplitude;
    pc.large_amplitude = e.large_amplitude;
    if (e.expectation == "blowup") pc.expectation = PcExpectation::Blowup;
    else if (e.expectation == "no_blowup") pc.expectation = PcExpectation::NoBlowup;
    else if (e.expectation == "none") pc.expectation = PcExpectation::None;
    pc.solver = cfg.base_solver();
    return pc;
}

}  // namespace critheat
