#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "critheat/experiments.hpp"
#include "critheat/fkpp_solver.hpp"
#include "critheat/initial_data.hpp"
#include "critheat/params.hpp"
#include "critheat/radial_solver.hpp"

namespace critheat {

enum class RunFrame { Fisher, Radial };

/// How a Dirichlet end is filled.
///   zero       : 0
///   constant   : `value`
///   far_field  : homogeneous ODE started from the datum's edge value (fisher frame)
///   exact_U    : the eternal solution evaluated at the end
struct BoundarySpec {
    enum class Kind { Zero, Constant, FarField, ExactU } kind = Kind::Zero;
    double value = 0.0;
};

struct GridSpec {
    // fisher frame: z window; radial frame: the same numbers are ln r_lo, ln r_hi.
    double lo = -40.0;
    double hi = 40.0;
    std::size_t n = 1601;
};

/// Keys only some subcommands read. Every key is materialized so the digest
/// covers everything a run could depend on.
struct ExperimentOptions {
    std::optional<double> horizon;
    // separatrix
    double lambda_lo = 0.5;
    double lambda_hi = 1.5;
    int iterations = 12;
    // decay-fit
    double window_fraction = 0.5;
    // gauss-check
    int mass_refinements = 2;
    double mass_tolerance = 1e-6;
    // equivalence (roundtrip / simulate cross-check)
    std::vector<std::size_t> resolutions{1601, 3201};
    double window_lo = -3.0;
    double window_hi = 3.0;
    // sigma2
    std::string scenario = "PlateauA";
    std::optional<double> q;
    double r_interior = 1.0;
    std::optional<double> r_probe;  // defaults to the grid's inner radius
    double probe_interval = 0.05;
    double probe_tolerance = 1e-6;
    double interior_factor = 10.0;
    double edge_fraction = 0.1;
    // pc-case
    std::string expectation = "auto";
    double small_amplitude = 1e-3;
    double large_amplitude = 10.0;
    // sweep
    std::vector<SweepEntry> sweep;
};

struct RunConfig {
    ProblemParams params{};
    RunFrame frame = RunFrame::Fisher;
    GridSpec grid;
    TimeControls time;
    BoundarySpec left;
    BoundarySpec right;
    InitialSpec initial = BumpDatum{};
    ExperimentOptions experiment;

    /// Materialized document: every default filled in.
    nlohmann::json to_json() const;
    /// FNV-1a 64 of the compact dump of to_json(), as 16 hex digits.
    std::string digest() const;

    SolverConfig solver_config(const DerivedConstants& c) const;
    RadialConfig radial_config(const DerivedConstants& c) const;
    /// Grid and time controls only, with zero boundaries; experiments that
    /// attach their own boundary data start from this.
    SolverConfig base_solver() const;
};

// Experiment configurations assembled from a run configuration. The CLI
// subcommands and the acceptance suite share these.
EquivalenceConfig equivalence_config(const RunConfig& cfg);
GaussCheckConfig gauss_check_config(const RunConfig& cfg, const DerivedConstants& c);
Sigma2Config sigma2_config(const RunConfig& cfg);
CriticalPcConfig critical_pc_config(const RunConfig& cfg);

/// Parses and validates. Throws ConfigError carrying a JSON-pointer path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(std::string_view text);
RunConfig parse_config_file(const std::filesystem::path& path);

InitialSpec parse_initial(const nlohmann::json& doc, const std::string& path = "/initial");
nlohmann::json initial_to_json(const InitialSpec& spec);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace critheat
