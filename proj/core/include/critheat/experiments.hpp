#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "critheat/fkpp_solver.hpp"
#include "critheat/grid.hpp"
#include "critheat/initial_data.hpp"
#include "critheat/params.hpp"
#include "critheat/time_controls.hpp"
#include "critheat/transform.hpp"

namespace critheat {

// ---------------------------------------------------------------------------
// Reports

/// One numeric claim: the measured value and the closed interval it must lie in.
struct Measurement {
    std::string name;
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool pass = false;
    std::string provenance;  // where the comparison value comes from

    static Measurement within(std::string name, double value, double lower, double upper,
                              std::string provenance);
    /// A yes/no claim, recorded as value 1 or 0 against the interval [1, 1].
    static Measurement holds(std::string name, bool value, std::string provenance);
};

struct ExperimentReport {
    std::string id;
    ProblemParams params{};
    std::string digest;  // filled by the caller from its configuration
    std::vector<Measurement> measurements;
    std::vector<std::string> notes;

    bool passed() const;
    void add(Measurement m) { measurements.push_back(std::move(m)); }
    nlohmann::json to_json() const;
};

/// t_max = 50 / max(|K0|, 0.1).
double default_horizon(const DerivedConstants& c);

/// Zero when the edge value vanishes, otherwise the spatially homogeneous
/// solution started from it.
BoundaryValue far_field(double edge_value, const DerivedConstants& c);

// ---------------------------------------------------------------------------
// Classification

struct Classification {
    Status status = Status::Undetermined;
    SolveOutcome outcome;
};

/// Maps u0 to the traveling frame, attaches far-field boundary data at both
/// ends and integrates to `horizon` on the grid and time controls of `base`.
Classification classify_datum(const RadialProfile& u0, const DerivedConstants& c, double horizon,
                              const SolverConfig& base = {});

// ---------------------------------------------------------------------------
// Separatrix

struct SeparatrixStep {
    double lambda = 0.0;
    Status status = Status::Undetermined;
    double t_end = 0.0;
};

struct SeparatrixResult {
    double lambda_star = 0.0;  // bracket midpoint
    double lo = 0.0;           // last lambda classified as decaying
    double hi = 0.0;           // last lambda classified as blowing up
    int iterations = 0;
    std::vector<SeparatrixStep> history;  // endpoints first, then every midpoint

    double width() const { return hi - lo; }
};

/// Bisection on lambda for the datum lambda * U(., 0). Throws BracketInvalid
/// when an endpoint is misclassified or undetermined, NumericalError when a
/// midpoint is undetermined.
SeparatrixResult separatrix_bisect(const DerivedConstants& c, double lambda_lo = 0.5,
                                   double lambda_hi = 1.5, int iterations = 12,
                                   std::optional<double> horizon = std::nullopt,
                                   const SolverConfig& base = {});

// ---------------------------------------------------------------------------
// Decay rate

struct DecayFit {
    double slope = 0.0;
    double prefactor = 0.0;  // exp(intercept)
    double r_squared = 0.0;
    std::size_t points = 0;
    double t_from = 0.0;
    double t_to = 0.0;
    bool decaying = false;  // slope < 0
};

inline constexpr std::size_t kMinFitPoints = 20;

/// Least squares of ln sup against t over the last `window_fraction` of the
/// traced time span.
DecayFit decay_rate_fit(std::span<const TracePoint> trace, double window_fraction = 0.5);

// ---------------------------------------------------------------------------
// Gaussian attractor

struct GaussianDeviation {
    std::vector<double> times;
    std::vector<double> D;      // sqrt(t) * sup |e^(K0 t) psi - G|
    std::vector<double> sup_G;  // sup of G(., t) over the window
    bool decreasing = false;    // over the last three samples
    bool small = false;         // final D < 0.05 * final sup G
    bool pass() const { return decreasing && small; }
};

inline constexpr double kGaussianFinalFraction = 0.05;

/// Throws InvalidArgument for a non-finite or non-positive mass.
GaussianDeviation gaussian_profile_deviation(std::span<const Field> snapshots,
                                             const DerivedConstants& c, double mass,
                                             double z_lo = -1e300, double z_hi = 1e300);

struct GaussCheckConfig {
    InitialSpec datum = BumpDatum{1.0, 0.5, 0.1};
    std::vector<double> times{2.0, 4.0, 8.0, 16.0};
    SolverConfig solver = [] {
        SolverConfig s;
        s.time.decay_threshold = 1e-30;
        return s;
    }();
    /// The mass identity is checked on Psi0 sampled at h / 2^k.
    int mass_refinements = 2;
    double mass_tolerance = 1e-6;
};

struct GaussCheckResult {
    WeightedMass mass;
    double l1_solver_grid = 0.0;
    double l1_check_grid = 0.0;
    double check_spacing = 0.0;
    GaussianDeviation deviation;
    SolveOutcome outcome;
};

GaussCheckResult gauss_check(const DerivedConstants& c, const GaussCheckConfig& config = {});

// ---------------------------------------------------------------------------
// Transformation equivalence

struct EquivalenceConfig {
    double y_lo = -40.0;  // ln r window of both solvers
    double y_hi = 40.0;
    std::vector<std::size_t> resolutions{1601, 3201};
    std::vector<double> times{1.0};
    double window_lo = -3.0;  // ln r window the gap is measured on
    double window_hi = 3.0;
    TimeControls time;  // t_max and snapshot_times are overridden
};

struct EquivalenceLevel {
    std::size_t n = 0;
    double h = 0.0;
    std::vector<double> gaps;  // one per requested time
    Status fisher_status = Status::Undetermined;
    Status radial_status = Status::Undetermined;
};

struct EquivalenceResult {
    std::vector<double> times;
    std::vector<EquivalenceLevel> levels;
    /// log2(gap_k / gap_{k+1}) at the last requested time, per refinement.
    std::vector<double> orders;
    bool statuses_agree = true;
};

EquivalenceResult transform_equivalence(const RadialProfile& u0, const DerivedConstants& c,
                                        const EquivalenceConfig& config = {});

// ---------------------------------------------------------------------------
// sigma = -2

enum class Sigma2Scenario { PlateauA, SupportedAway };

std::string_view to_string(Sigma2Scenario s);

struct Sigma2Config {
    Sigma2Scenario scenario = Sigma2Scenario::PlateauA;
    PlateauDatum plateau{};
    /// SupportedAway datum; the default bump lives on [1, e].
    InitialSpec datum = BumpDatum{(1.0 + 2.718281828459045) / 2.0, (2.718281828459045 - 1.0) / 2.0,
                                  2.0};
    std::optional<double> q;     // defaults to q_c = (p - 1) / 2
    double r_interior = 1.0;     // bounded-window start for PlateauA
    double interior_factor = 10.0;
    double edge_fraction = 0.1;  // argmax must sit in this leftmost share of the window
    std::optional<double> r_probe;  // stands in for r = 0; defaults to the grid's r_lo
    double probe_interval = 0.05;
    double probe_tolerance = 1e-6;
    double horizon = 20.0;
    SolverConfig solver;
};

ExperimentReport sigma_minus2_suite(const ProblemParams& params, const Sigma2Config& config = {});

// ---------------------------------------------------------------------------
// p = p_c

enum class PcExpectation { Auto, Blowup, NoBlowup, None };

struct CriticalPcConfig {
    InitialSpec datum = BumpDatum{1.0, 0.5, 2.0};
    PcExpectation expectation = PcExpectation::Auto;
    double horizon = 50.0;
    double small_amplitude = 1e-3;  // sup Psi0 at or below: small-data case
    double large_amplitude = 10.0;  // sup Psi0 at or above: large-data case
    SolverConfig solver;
};

/// Resolves Auto against the parameters and the mapped datum amplitude.
PcExpectation expected_pc_outcome(const DerivedConstants& c, double psi0_sup,
                                  const CriticalPcConfig& config);

ExperimentReport critical_pc_suite(const ProblemParams& params, const CriticalPcConfig& config = {});

// ---------------------------------------------------------------------------
// Sweep

struct SweepEntry {
    ProblemParams params;
    InitialSpec datum;
};

struct SweepRow {
    ProblemParams params;
    Regime regime = Regime::FisherKPP;
    double K0 = 0.0;
    std::string datum;
    Status status = Status::Undetermined;
    double t_end = 0.0;
};

/// Entries run concurrently; rows come back in input order.
std::vector<SweepRow> fujita_sweep(std::span<const SweepEntry> entries,
                                   std::optional<double> horizon = std::nullopt,
                                   const SolverConfig& base = {});

/// Blow-up for every K0 < 0 row and at least one decay per K0 > 0 parameter set.
ExperimentReport sweep_report(std::span<const SweepRow> rows);

}  // namespace critheat
