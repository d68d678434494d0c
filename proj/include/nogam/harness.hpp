#pragma once

#include "nogam/entropy.hpp"
#include "nogam/graph.hpp"
#include "nogam/ordering.hpp"
#include "nogam/pruning.hpp"
#include "nogam/regression.hpp"
#include "nogam/scm.hpp"
#include "nogam/stein.hpp"
#include "nogam/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nogam {

/// One benchmark cell: graph model x size x density x noise family, a list
/// of seeds and the methods to run on each generated dataset.
struct ExperimentConfig {
    std::string graph = "ER";  // ER | SF
    int d = 10;
    int density = 1;  // ER: expected edges = density*d; SF: edges per new node
    std::string noise = "Gauss";
    int n = 1000;
    std::vector<std::uint64_t> seeds = {0};
    std::vector<std::string> methods = {"nogam"};  // nogam | score-baseline
    RegressorConfig regressor;
    SteinConfig stein;
    PruneConfig prune;
    double gp_bandwidth = 1.0;
    int jobs = 1;

    static ExperimentConfig from_json_text(const std::string& text);
    std::string canonical_json() const;
    std::string hash() const;  // FNV-1a of the canonical JSON
    void validate() const;
};

struct ResultRow {
    std::uint64_t seed = 0;
    std::string method;
    std::string graph_type;
    int d = 0;
    std::string noise;
    int shd = 0;
    int sid = 0;
    int d_top = 0;
    double wall_ms = 0.0;
    std::string error;  // empty on success; metrics are blank in the CSV otherwise
};

/// Runs every (seed, method) cell; sub-failures are recorded in the row's
/// error tag and the sweep continues. Rows come back in (seed, method)
/// order regardless of the worker schedule.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

/// Header "seed,method,graph_type,d,noise,shd,sid,d_top,wall_ms,error".
std::string results_csv(const std::vector<ResultRow>& rows);

/// mean +- std per method over the successful rows, table-style text.
std::string summary_table(const std::vector<ResultRow>& rows);

struct DiscoverResult {
    Dag graph;
    OrderingResult ordering;
};

/// nogam_order + prune on arbitrary data.
DiscoverResult discover(const Matrix& data, const RegressorConfig& reg_cfg,
                        const SteinConfig& stein_cfg, const PruneConfig& prune_cfg,
                        int jobs = 1);

/// One (setup, entropy-mode) cell of the uniform-noise direction example.
struct Example1Case {
    double total_forward = 0.0;
    double total_reverse = 0.0;
    Direction verdict = Direction::Forward;
};

struct Example1Report {
    Example1Case linear_nonparametric;
    Example1Case linear_gaussian;
    Example1Case nonlinear_nonparametric;
    Example1Case nonlinear_gaussian;

    std::string to_json() const;
};

/// Regenerates the uniform-noise bivariate setups (linear, and x^{1.1} with
/// the weak nonlinearity) at n samples and evaluates both entropy modes.
/// The known forward noise term enters with its exact entropy; everything
/// else is estimated from the sample. When samples_csv is given it receives
/// an (x, y, residuals) table for external plotting.
Example1Report run_example1(int n = 2000, std::uint64_t seed = 0,
                            const RegressorConfig& reg_cfg = {},
                            std::string* samples_csv = nullptr);

/// Data generation driven by a JSON spec (see README): returns the dataset
/// and the metadata JSON describing graph, noise and seed.
struct GenOutput {
    Matrix data;
    std::string metadata_json;
};
GenOutput generate_from_json(const std::string& config_text);

}  // namespace nogam
