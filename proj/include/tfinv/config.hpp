#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tfinv/expansion.hpp"
#include "tfinv/grid.hpp"
#include "tfinv/spaces.hpp"

namespace tfinv {

/* Problems with the run configuration (bad file, unknown key, wrong value).
 * The CLI maps these to exit code 2; everything else that throws is a runtime
 * failure and maps to exit code 1. */
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Experiment {
    Classify,
    BargmannCovariance,
    V0Estimate,
    AverageNorm,
    FullTheoremWitness,
};

const char* experiment_name(Experiment e);
Experiment parse_experiment(const std::string& s); // throws ConfigError

/* Uniformly spaced axis values: count == 1 gives the midpoint of [min,max]. */
struct AxisRange {
    double min = 0.0;
    double max = 0.0;
    int count = 1;

    std::vector<double> values() const;
};

/* One named test-family generator.
 *   hermite:k       the k-th basis function (index (k,0,...,0) for d > 1)
 *   gaussian:s      the L2-normalized centered Gaussian of width s
 *   random:seed,N   unit-norm expansion with seeded complex-normal
 *                   coefficients on every shell up to N                   */
struct FamilyMember {
    enum class Kind { Hermite, Gaussian, Random };

    std::string id; // generator string as written in the config
    Kind kind = Kind::Hermite;
    int hermite_k = 0;
    double sigma = 1.0;
    std::uint64_t seed = 0;
    int random_order = 0;
};

FamilyMember parse_family_member(const std::string& s); // throws ConfigError

/* Coefficient realization of a member (truncation caps analyzed members; the
 * Gaussian branch drops quadrature noise below 1e-13 of the peak).  The grid
 * realization keeps the analytic evaluator so downstream quadrature stays
 * exact off-grid. */
HermiteExpansion member_expansion(const FamilyMember& m, int d, int truncation);
GridFunction member_grid(const FamilyMember& m, int d, const GridSpec& spec);

/* Fully resolved run description.  Parsing is strict: keys that are unknown,
 * or known but unused by the requested experiment, are rejected. */
struct ExperimentConfig {
    Experiment experiment = Experiment::Classify;
    std::optional<SpaceModel> model; // absent only for classify / covariance
    int dimension = 1;               // model-free experiments only
    std::vector<FamilyMember> family;
    int truncation = 48;
    double grid_h = 0.0625;
    double grid_L = 8.0;
    double schedule_r0 = 5.0;
    int schedule_doublings = 5;
    double cube_spacing = 0.125;
    double probe_x = 1.0;
    double probe_xi = 1.0;
    AxisRange phase_x{0.0, 0.0, 1};
    AxisRange phase_xi{0.0, 0.0, 1};
    double tol_covariance = 1e-8;
    double submult_slack_factor = 0.05;
    std::uint64_t seed = 12345;
    int workers = 0; // 0 = library default
    std::string out = "results";

    int d() const { return model ? model->d : dimension; }
    GridSpec grid_spec() const { return GridSpec{d(), grid_h, grid_L}; }

    /* The resolved experiment parameters embedded in every output header.
       Delivery knobs (out, workers) are omitted so the same run produces
       byte-identical outputs wherever they are written. */
    nlohmann::json resolved() const;
};

ExperimentConfig parse_config(const nlohmann::json& j); // throws ConfigError
ExperimentConfig load_config(const std::string& path);  // throws ConfigError

} // namespace tfinv
