#pragma once

#include "nogam/graph.hpp"
#include "nogam/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nogam {

enum class NoiseFamily { Normal, Beta, Exponential, Gamma, Gumbel, Laplace, Uniform };

std::string to_string(NoiseFamily f);
NoiseFamily noise_family_from_string(const std::string& name);

/// One additive-noise term. Parameter meaning depends on the family:
///   Normal: p1 = sigma          Beta: p1 = alpha, p2 = beta
///   Exponential: p1 = lambda    Gamma: p1 = shape, p2 = scale
///   Gumbel: p1 = scale          Laplace: p1 = scale
///   Uniform: p1 = lo, p2 = hi
/// center=true subtracts the analytic mean after sampling, so that the
/// emitted noise has mean zero regardless of the family.
struct NoiseSpec {
    NoiseFamily family = NoiseFamily::Normal;
    double p1 = 1.0;
    double p2 = 0.0;
    bool center = true;

    static NoiseSpec normal(double sigma = 1.0);
    static NoiseSpec beta(double alpha = 2.0, double b = 2.0);
    static NoiseSpec exponential(double lambda = 1.0);
    static NoiseSpec gamma(double shape = 2.0, double scale = 1.0);
    static NoiseSpec gumbel(double target_sigma = 1.0);
    static NoiseSpec laplace_unit_variance();
    static NoiseSpec uniform(double lo, double hi, bool center = true);

    /// Default parameters for a family name, unit-order variance.
    static NoiseSpec default_for(NoiseFamily f);

    double mean() const;      ///< analytic mean before centering
    double variance() const;
    double analytic_entropy() const;  ///< differential entropy in nats
    void validate() const;
};

Vector sample_noise(const NoiseSpec& spec, int n, Rng& rng);

/// One joint draw of a GP prior with RBF kernel
/// K(u,v) = exp(-|u-v|^2 / (2 bandwidth^2)) over the given input rows,
/// 1e-6 jitter on the Gram diagonal.
Vector sample_gp_mechanism(const Matrix& parent_values, double bandwidth, Rng& rng);

/// Mechanism attached to a non-root node. Gp mechanisms are realized as a
/// joint draw of function values over the observed parent rows; ClosedForm
/// evaluates fn rowwise on the parent vector.
struct Mechanism {
    enum class Kind { Gp, ClosedForm };
    Kind kind = Kind::Gp;
    double bandwidth = 1.0;
    std::function<double(const std::vector<double>&)> fn;

    static Mechanism gp(double bandwidth = 1.0);
    static Mechanism closed_form(std::function<double(const std::vector<double>&)> fn);
};

struct ScmSpec {
    Dag graph;
    std::vector<Mechanism> mechanisms;  // one per node; ignored for roots
    std::vector<NoiseSpec> noise;       // one per node

    /// Every node gets a GP mechanism with the given bandwidth and the
    /// same noise spec. The standard synthetic benchmark generator.
    static ScmSpec gp_anm(Dag graph, NoiseSpec common_noise, double bandwidth = 1.0);

    void validate() const;
};

struct GeneratedData {
    Matrix data;   // n x d observations
    Matrix noise;  // realized noise, data - noise == mechanism values
};

/// Columns filled in topological order; roots are pure noise. Deterministic
/// given the rng state.
GeneratedData generate_dataset(const ScmSpec& spec, int n, Rng& rng);

/// Test SCM with closed-form mechanisms and noise log-densities, used as an
/// exact score oracle: all derivatives known analytically.
struct AnalyticNode {
    std::function<double(const std::vector<double>&)> mech;  // unused for roots
    // partial derivative of mech w.r.t. each parent, parent order as in Dag::parents
    std::vector<std::function<double(const std::vector<double>&)>> mech_partial;
    std::function<double(double)> log_density;        // g_i(n)
    std::function<double(double)> log_density_deriv;  // g_i'(n)
    NoiseSpec noise;
};

struct AnalyticScm {
    Dag graph;
    std::vector<AnalyticNode> nodes;

    /// log p(x) = sum_i g_i(x_i - f_i(parents)).
    double joint_log_density(const Vector& x) const;

    GeneratedData generate(int n, Rng& rng) const;

    // canned test models
    static AnalyticScm bivariate_cubic_gaussian(double noise_sigma = 1.0);
    static AnalyticScm bivariate_cubic_laplace();
    static AnalyticScm chain3_gaussian();
};

/// Exact score matrix: s_i(x) = g_i'(n_i) - sum_{k in children(i)} df_k/dx_i * g_k'(n_k).
ScoreEstimate analytic_score(const AnalyticScm& oracle, const Matrix& x);

}  // namespace nogam
