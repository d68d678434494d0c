#include "nogam/scm.hpp"

#include "kernels.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <Eigen/Cholesky>

#include <cmath>
#include <numbers>

namespace nogam {

namespace {
constexpr double kEulerGamma = 0.57721566490153286;
constexpr double kGpJitter = 1e-6;

double sgn(double v) { return (v > 0.0) - (v < 0.0); }
}  // namespace

std::string to_string(NoiseFamily f) {
    switch (f) {
        case NoiseFamily::Normal: return "Normal";
        case NoiseFamily::Beta: return "Beta";
        case NoiseFamily::Exponential: return "Exponential";
        case NoiseFamily::Gamma: return "Gamma";
        case NoiseFamily::Gumbel: return "Gumbel";
        case NoiseFamily::Laplace: return "Laplace";
        case NoiseFamily::Uniform: return "Uniform";
    }
    return "?";
}

NoiseFamily noise_family_from_string(const std::string& name) {
    if (name == "Normal" || name == "Gauss" || name == "Gaussian") return NoiseFamily::Normal;
    if (name == "Beta") return NoiseFamily::Beta;
    if (name == "Exponential" || name == "Exp") return NoiseFamily::Exponential;
    if (name == "Gamma") return NoiseFamily::Gamma;
    if (name == "Gumbel") return NoiseFamily::Gumbel;
    if (name == "Laplace") return NoiseFamily::Laplace;
    if (name == "Uniform") return NoiseFamily::Uniform;
    throw std::invalid_argument("unknown noise family: " + name);
}

NoiseSpec NoiseSpec::normal(double sigma) { return {NoiseFamily::Normal, sigma, 0.0, true}; }
NoiseSpec NoiseSpec::beta(double alpha, double b) { return {NoiseFamily::Beta, alpha, b, true}; }
NoiseSpec NoiseSpec::exponential(double lambda) {
    return {NoiseFamily::Exponential, lambda, 0.0, true};
}
NoiseSpec NoiseSpec::gamma(double shape, double scale) {
    return {NoiseFamily::Gamma, shape, scale, true};
}
NoiseSpec NoiseSpec::gumbel(double target_sigma) {
    // scale chosen so the family variance pi^2 b^2 / 6 hits target_sigma^2
    return {NoiseFamily::Gumbel, std::numbers::sqrt3 * std::numbers::sqrt2 / std::numbers::pi * target_sigma,
            0.0, true};
}
NoiseSpec NoiseSpec::laplace_unit_variance() {
    return {NoiseFamily::Laplace, 1.0 / std::numbers::sqrt2, 0.0, true};
}
NoiseSpec NoiseSpec::uniform(double lo, double hi, bool center) {
    return {NoiseFamily::Uniform, lo, hi, center};
}

NoiseSpec NoiseSpec::default_for(NoiseFamily f) {
    switch (f) {
        case NoiseFamily::Normal: return normal();
        case NoiseFamily::Beta: return beta();
        case NoiseFamily::Exponential: return exponential();
        case NoiseFamily::Gamma: return gamma();
        case NoiseFamily::Gumbel: return gumbel();
        case NoiseFamily::Laplace: return laplace_unit_variance();
        case NoiseFamily::Uniform:
            return uniform(-std::numbers::sqrt3, std::numbers::sqrt3);  // unit variance
    }
    throw std::invalid_argument("default_for: unknown family");
}

double NoiseSpec::mean() const {
    switch (family) {
        case NoiseFamily::Normal: return 0.0;
        case NoiseFamily::Beta: return p1 / (p1 + p2);
        case NoiseFamily::Exponential: return 1.0 / p1;
        case NoiseFamily::Gamma: return p1 * p2;
        case NoiseFamily::Gumbel: return p1 * kEulerGamma;
        case NoiseFamily::Laplace: return 0.0;
        case NoiseFamily::Uniform: return 0.5 * (p1 + p2);
    }
    return 0.0;
}

double NoiseSpec::variance() const {
    switch (family) {
        case NoiseFamily::Normal: return p1 * p1;
        case NoiseFamily::Beta: {
            const double s = p1 + p2;
            return p1 * p2 / (s * s * (s + 1.0));
        }
        case NoiseFamily::Exponential: return 1.0 / (p1 * p1);
        case NoiseFamily::Gamma: return p1 * p2 * p2;
        case NoiseFamily::Gumbel: return std::numbers::pi * std::numbers::pi * p1 * p1 / 6.0;
        case NoiseFamily::Laplace: return 2.0 * p1 * p1;
        case NoiseFamily::Uniform: {
            const double w = p2 - p1;
            return w * w / 12.0;
        }
    }
    return 0.0;
}

double NoiseSpec::analytic_entropy() const {
    using boost::math::digamma;
    switch (family) {
        case NoiseFamily::Normal:
            return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * p1 * p1);
        case NoiseFamily::Beta: {
            const double lb = std::lgamma(p1) + std::lgamma(p2) - std::lgamma(p1 + p2);
            return lb - (p1 - 1.0) * digamma(p1) - (p2 - 1.0) * digamma(p2) +
                   (p1 + p2 - 2.0) * digamma(p1 + p2);
        }
        case NoiseFamily::Exponential: return 1.0 - std::log(p1);
        case NoiseFamily::Gamma:
            return p1 + std::log(p2) + std::lgamma(p1) + (1.0 - p1) * digamma(p1);
        case NoiseFamily::Gumbel: return std::log(p1) + kEulerGamma + 1.0;
        case NoiseFamily::Laplace: return 1.0 + std::log(2.0 * p1);
        case NoiseFamily::Uniform: return std::log(p2 - p1);
    }
    return 0.0;
}

void NoiseSpec::validate() const {
    switch (family) {
        case NoiseFamily::Normal:
        case NoiseFamily::Exponential:
        case NoiseFamily::Gumbel:
        case NoiseFamily::Laplace:
            require(p1 > 0.0, "NoiseSpec: scale/rate parameter must be positive");
            break;
        case NoiseFamily::Beta:
        case NoiseFamily::Gamma:
            require(p1 > 0.0 && p2 > 0.0, "NoiseSpec: shape parameters must be positive");
            break;
        case NoiseFamily::Uniform:
            require(p2 > p1, "NoiseSpec: uniform needs hi > lo");
            break;
    }
    require(variance() > 0.0, "NoiseSpec: variance must be positive");
}

Vector sample_noise(const NoiseSpec& spec, int n, Rng& rng) {
    require(n >= 1, "sample_noise: n must be positive");
    spec.validate();
    Vector out(n);
    switch (spec.family) {
        case NoiseFamily::Normal: {
            std::normal_distribution<double> dist(0.0, spec.p1);
            for (int i = 0; i < n; ++i) out[i] = dist(rng);
            break;
        }
        case NoiseFamily::Beta: {
            std::gamma_distribution<double> ga(spec.p1, 1.0), gb(spec.p2, 1.0);
            for (int i = 0; i < n; ++i) {
                const double a = ga(rng), b = gb(rng);
                out[i] = a / (a + b);
            }
            break;
        }
        case NoiseFamily::Exponential: {
            std::exponential_distribution<double> dist(spec.p1);
            for (int i = 0; i < n; ++i) out[i] = dist(rng);
            break;
        }
        case NoiseFamily::Gamma: {
            std::gamma_distribution<double> dist(spec.p1, spec.p2);
            for (int i = 0; i < n; ++i) out[i] = dist(rng);
            break;
        }
        case NoiseFamily::Gumbel: {
            std::extreme_value_distribution<double> dist(0.0, spec.p1);
            for (int i = 0; i < n; ++i) out[i] = dist(rng);
            break;
        }
        case NoiseFamily::Laplace: {
            // inverse CDF on u ~ U(-1/2, 1/2)
            std::uniform_real_distribution<double> unit(-0.5, 0.5);
            for (int i = 0; i < n; ++i) {
                const double u = unit(rng);
                out[i] = -spec.p1 * sgn(u) * std::log1p(-2.0 * std::abs(u));
            }
            break;
        }
        case NoiseFamily::Uniform: {
            std::uniform_real_distribution<double> dist(spec.p1, spec.p2);
            for (int i = 0; i < n; ++i) out[i] = dist(rng);
            break;
        }
    }
    if (spec.center) out.array() -= spec.mean();
    return out;
}

Vector sample_gp_mechanism(const Matrix& parent_values, double bandwidth, Rng& rng) {
    require(parent_values.rows() >= 1 && parent_values.cols() >= 1,
            "sample_gp_mechanism: empty inputs");
    require(bandwidth > 0.0, "sample_gp_mechanism: bandwidth must be positive");
    require(parent_values.allFinite(), "sample_gp_mechanism: non-finite inputs");

    const auto m = parent_values.rows();
    Matrix k = (-detail::pairwise_sq_dists(parent_values) / (2.0 * bandwidth * bandwidth)).array().exp();
    k.diagonal().array() += kGpJitter;

    Eigen::LLT<Matrix> llt(k);
    if (llt.info() != Eigen::Success)
        throw NumericalError("sample_gp_mechanism: Gram matrix factorization failed");

    std::normal_distribution<double> unit(0.0, 1.0);
    Vector z(m);
    for (Eigen::Index i = 0; i < m; ++i) z[i] = unit(rng);
    return llt.matrixL() * z;
}

Mechanism Mechanism::gp(double bandwidth) {
    Mechanism m;
    m.kind = Kind::Gp;
    m.bandwidth = bandwidth;
    return m;
}

Mechanism Mechanism::closed_form(std::function<double(const std::vector<double>&)> fn) {
    Mechanism m;
    m.kind = Kind::ClosedForm;
    m.fn = std::move(fn);
    return m;
}

ScmSpec ScmSpec::gp_anm(Dag graph, NoiseSpec common_noise, double bandwidth) {
    ScmSpec spec;
    const int d = graph.node_count();
    spec.graph = std::move(graph);
    spec.mechanisms.assign(d, Mechanism::gp(bandwidth));
    spec.noise.assign(d, common_noise);
    return spec;
}

void ScmSpec::validate() const {
    const int d = graph.node_count();
    require(d >= 1, "ScmSpec: empty graph");
    require(static_cast<int>(mechanisms.size()) == d, "ScmSpec: one mechanism per node");
    require(static_cast<int>(noise.size()) == d, "ScmSpec: one noise spec per node");
    for (const auto& nz : noise) nz.validate();
    for (int v = 0; v < d; ++v) {
        if (!graph.parents(v).empty() && mechanisms[v].kind == Mechanism::Kind::ClosedForm)
            require(static_cast<bool>(mechanisms[v].fn), "ScmSpec: closed-form mechanism missing fn");
    }
    require(graph.is_acyclic(), "ScmSpec: graph must be acyclic");
}

namespace {

Matrix parent_block(const Matrix& data, const std::vector<int>& parents) {
    Matrix p(data.rows(), parents.size());
    for (size_t c = 0; c < parents.size(); ++c) p.col(c) = data.col(parents[c]);
    return p;
}

}  // namespace

GeneratedData generate_dataset(const ScmSpec& spec, int n, Rng& rng) {
    spec.validate();
    require(n >= 1, "generate_dataset: n must be positive");
    const int d = spec.graph.node_count();
    GeneratedData out;
    out.data = Matrix::Zero(n, d);
    out.noise = Matrix::Zero(n, d);

    const Ordering topo = topological_sort(spec.graph);
    for (int v : topo.perm) {
        Vector nz = sample_noise(spec.noise[v], n, rng);
        out.noise.col(v) = nz;
        const auto parents = spec.graph.parents(v);
        if (parents.empty()) {
            out.data.col(v) = nz;
            continue;
        }
        const Matrix p = parent_block(out.data, parents);
        Vector f(n);
        const Mechanism& mech = spec.mechanisms[v];
        if (mech.kind == Mechanism::Kind::Gp) {
            f = sample_gp_mechanism(p, mech.bandwidth, rng);
        } else {
            std::vector<double> row(parents.size());
            for (int i = 0; i < n; ++i) {
                for (size_t c = 0; c < parents.size(); ++c) row[c] = p(i, c);
                f[i] = mech.fn(row);
            }
        }
        out.data.col(v) = f + nz;
    }
    if (!out.data.allFinite())
        throw NumericalError("generate_dataset: produced non-finite values");
    return out;
}

double AnalyticScm::joint_log_density(const Vector& x) const {
    const int d = graph.node_count();
    require(x.size() == d, "joint_log_density: dimension mismatch");
    double total = 0.0;
    for (int v = 0; v < d; ++v) {
        const auto parents = graph.parents(v);
        double fv = 0.0;
        if (!parents.empty()) {
            std::vector<double> row(parents.size());
            for (size_t c = 0; c < parents.size(); ++c) row[c] = x[parents[c]];
            fv = nodes[v].mech(row);
        }
        total += nodes[v].log_density(x[v] - fv);
    }
    return total;
}

GeneratedData AnalyticScm::generate(int n, Rng& rng) const {
    ScmSpec spec;
    spec.graph = graph;
    for (const auto& node : nodes) {
        spec.mechanisms.push_back(node.mech ? Mechanism::closed_form(node.mech)
                                            : Mechanism::gp());
        spec.noise.push_back(node.noise);
    }
    return generate_dataset(spec, n, rng);
}

ScoreEstimate analytic_score(const AnalyticScm& oracle, const Matrix& x) {
    const int d = oracle.graph.node_count();
    require(x.cols() == d, "analytic_score: column count mismatch");
    require(static_cast<int>(oracle.nodes.size()) == d, "analytic_score: oracle incomplete");
    const auto n = x.rows();

    // realized noise and per-node g'(n) for every sample
    Matrix gprime(n, d);
    std::vector<std::vector<int>> parents(d);
    for (int v = 0; v < d; ++v) parents[v] = oracle.graph.parents(v);

    Matrix noise(n, d);
    for (int v = 0; v < d; ++v) {
        std::vector<double> row(parents[v].size());
        for (Eigen::Index i = 0; i < n; ++i) {
            double fv = 0.0;
            if (!parents[v].empty()) {
                for (size_t c = 0; c < parents[v].size(); ++c) row[c] = x(i, parents[v][c]);
                fv = oracle.nodes[v].mech(row);
            }
            noise(i, v) = x(i, v) - fv;
            gprime(i, v) = oracle.nodes[v].log_density_deriv(noise(i, v));
        }
    }
    if (!gprime.allFinite())
        throw NumericalError("analytic_score: sample outside noise support");

    ScoreEstimate est;
    est.s = gprime;
    for (int k = 0; k < d; ++k) {
        for (size_t c = 0; c < parents[k].size(); ++c) {
            const int i = parents[k][c];
            std::vector<double> row(parents[k].size());
            for (Eigen::Index r = 0; r < n; ++r) {
                for (size_t cc = 0; cc < parents[k].size(); ++cc) row[cc] = x(r, parents[k][cc]);
                est.s(r, i) -= oracle.nodes[k].mech_partial[c](row) * gprime(r, k);
            }
        }
    }
    return est;
}

namespace {

AnalyticNode gaussian_root(double sigma) {
    AnalyticNode node;
    node.noise = NoiseSpec::normal(sigma);
    const double var = sigma * sigma;
    node.log_density = [var](double nz) {
        return -0.5 * nz * nz / var - 0.5 * std::log(2.0 * std::numbers::pi * var);
    };
    node.log_density_deriv = [var](double nz) { return -nz / var; };
    return node;
}

AnalyticNode laplace_node(double b) {
    AnalyticNode node;
    node.noise = {NoiseFamily::Laplace, b, 0.0, true};
    node.log_density = [b](double nz) { return -std::abs(nz) / b - std::log(2.0 * b); };
    node.log_density_deriv = [b](double nz) { return -sgn(nz) / b; };
    return node;
}

void attach_cubic(AnalyticNode& node) {
    node.mech = [](const std::vector<double>& u) { return u[0] * u[0] * u[0]; };
    node.mech_partial = {[](const std::vector<double>& u) { return 3.0 * u[0] * u[0]; }};
}

}  // namespace

AnalyticScm AnalyticScm::bivariate_cubic_gaussian(double noise_sigma) {
    AnalyticScm scm;
    scm.graph = Dag(2);
    scm.graph.add_edge(0, 1);
    scm.nodes.push_back(gaussian_root(1.0));
    scm.nodes.push_back(gaussian_root(noise_sigma));
    attach_cubic(scm.nodes[1]);
    return scm;
}

AnalyticScm AnalyticScm::bivariate_cubic_laplace() {
    AnalyticScm scm;
    scm.graph = Dag(2);
    scm.graph.add_edge(0, 1);
    scm.nodes.push_back(laplace_node(1.0 / std::numbers::sqrt2));
    scm.nodes.push_back(laplace_node(1.0 / std::numbers::sqrt2));
    attach_cubic(scm.nodes[1]);
    return scm;
}

AnalyticScm AnalyticScm::chain3_gaussian() {
    AnalyticScm scm;
    scm.graph = Dag(3);
    scm.graph.add_edge(0, 1);
    scm.graph.add_edge(1, 2);
    scm.nodes.push_back(gaussian_root(1.0));
    scm.nodes.push_back(gaussian_root(1.0));
    scm.nodes.push_back(gaussian_root(1.0));
    attach_cubic(scm.nodes[1]);
    // keep the second mechanism bounded so deep values stay well scaled
    scm.nodes[2].mech = [](const std::vector<double>& u) { return 2.0 * std::sin(u[0]); };
    scm.nodes[2].mech_partial = {
        [](const std::vector<double>& u) { return 2.0 * std::cos(u[0]); }};
    return scm;
}

}  // namespace nogam
