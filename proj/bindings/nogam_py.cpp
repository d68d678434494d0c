#include "nogam/entropy.hpp"
#include "nogam/graph.hpp"
#include "nogam/harness.hpp"
#include "nogam/metrics.hpp"
#include "nogam/ordering.hpp"
#include "nogam/pruning.hpp"
#include "nogam/regression.hpp"
#include "nogam/scm.hpp"
#include "nogam/stein.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

using nogam::Matrix;
using nogam::Vector;

Eigen::MatrixXi dag_to_adjacency(const nogam::Dag& g) {
    const int d = g.node_count();
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(d, d);
    for (auto [i, j] : g.edges()) adj(i, j) = 1;
    return adj;
}

nogam::Dag dag_from_adjacency(const Eigen::MatrixXi& adj) {
    if (adj.rows() != adj.cols()) throw std::invalid_argument("adjacency must be square");
    nogam::Dag g(static_cast<int>(adj.rows()));
    for (Eigen::Index i = 0; i < adj.rows(); ++i)
        for (Eigen::Index j = 0; j < adj.cols(); ++j)
            if (adj(i, j) != 0) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

nogam::Ordering ordering_from_list(const std::vector<int>& perm) {
    nogam::Ordering o;
    o.perm = perm;
    if (!o.is_valid_permutation()) throw std::invalid_argument("order is not a permutation");
    return o;
}

nogam::RegressorConfig make_reg(double alpha, double gamma, int folds,
                                const std::string& kind) {
    nogam::RegressorConfig cfg;
    cfg.alpha = alpha;
    cfg.gamma = gamma;
    cfg.folds = folds;
    if (kind == "KernelRidge")
        cfg.kind = nogam::RegressorKind::KernelRidge;
    else if (kind == "LinearL1")
        cfg.kind = nogam::RegressorKind::LinearL1;
    else
        throw std::invalid_argument("kind must be KernelRidge or LinearL1");
    return cfg;
}

py::dict ordering_result_to_dict(const nogam::OrderingResult& result) {
    py::dict out;
    out["order"] = result.order.perm;
    py::list iterations;
    for (const auto& it : result.iterations) {
        py::dict rec;
        rec["nodes"] = it.nodes;
        rec["stat"] = it.stat;
        rec["chosen"] = it.chosen;
        iterations.append(std::move(rec));
    }
    out["iterations"] = std::move(iterations);
    return out;
}

}  // namespace

PYBIND11_MODULE(_nogam, m) {
    m.doc() = "Score-based causal discovery for additive noise models with "
              "arbitrary noise distributions";

    // graphs
    m.def(
        "sample_er",
        [](int d, int density_mult, std::uint64_t seed) {
            nogam::Rng rng(seed);
            return dag_to_adjacency(nogam::sample_er(d, density_mult, rng));
        },
        py::arg("d"), py::arg("density_mult") = 1, py::arg("seed") = 0,
        "Random DAG with expected edge count density_mult * d");
    m.def(
        "sample_sf",
        [](int d, int m_edges, std::uint64_t seed) {
            nogam::Rng rng(seed);
            return dag_to_adjacency(nogam::sample_sf(d, m_edges, rng));
        },
        py::arg("d"), py::arg("m") = 1, py::arg("seed") = 0,
        "Scale-free DAG via preferential attachment, edges oriented old -> new");
    m.def(
        "topological_sort",
        [](const Eigen::MatrixXi& adj) {
            return nogam::topological_sort(dag_from_adjacency(adj)).perm;
        },
        py::arg("adjacency"));
    m.def(
        "is_consistent_ordering",
        [](const Eigen::MatrixXi& adj, const std::vector<int>& order) {
            return nogam::is_consistent_ordering(dag_from_adjacency(adj),
                                                 ordering_from_list(order));
        },
        py::arg("adjacency"), py::arg("order"));
    m.def(
        "full_dag_from_ordering",
        [](const std::vector<int>& order) {
            return dag_to_adjacency(nogam::full_dag_from_ordering(ordering_from_list(order)));
        },
        py::arg("order"));

    // synthetic data
    m.def(
        "generate_dataset",
        [](const Eigen::MatrixXi& adj, const std::string& noise, int n, std::uint64_t seed,
           double gp_bandwidth) {
            nogam::Rng rng(seed);
            const auto spec = nogam::ScmSpec::gp_anm(
                dag_from_adjacency(adj),
                nogam::NoiseSpec::default_for(nogam::noise_family_from_string(noise)),
                gp_bandwidth);
            auto out = nogam::generate_dataset(spec, n, rng);
            return py::make_tuple(std::move(out.data), std::move(out.noise));
        },
        py::arg("adjacency"), py::arg("noise") = "Gauss", py::arg("n") = 1000,
        py::arg("seed") = 0, py::arg("gp_bandwidth") = 1.0,
        "Draw (data, noise) from a GP-mechanism additive noise model");

    // score estimation
    m.def(
        "stein_score",
        [](const Matrix& x, double eta, double bandwidth) {
            return nogam::stein_score(x, {eta, bandwidth}).s;
        },
        py::arg("x"), py::arg("eta") = 0.01, py::arg("bandwidth") = 0.0);
    m.def(
        "stein_jacobian_diag",
        [](const Matrix& x, double eta, double bandwidth) {
            return nogam::stein_jacobian_diag(x, {eta, bandwidth});
        },
        py::arg("x"), py::arg("eta") = 0.01, py::arg("bandwidth") = 0.0);

    // regression
    m.def(
        "estimate_residuals",
        [](const Matrix& x, double alpha, double gamma, int folds, const std::string& kind,
           int jobs) {
            return nogam::estimate_residuals(x, make_reg(alpha, gamma, folds, kind), jobs);
        },
        py::arg("x"), py::arg("alpha") = 0.01, py::arg("gamma") = 0.1, py::arg("folds") = 5,
        py::arg("kind") = "KernelRidge", py::arg("jobs") = 1);

    // ordering
    m.def(
        "leaf_mse_scores",
        [](const Matrix& x, double alpha, double gamma, int folds, const std::string& kind,
           double eta, double bandwidth, int jobs) {
            return nogam::leaf_mse_scores(x, make_reg(alpha, gamma, folds, kind),
                                          {eta, bandwidth}, jobs);
        },
        py::arg("x"), py::arg("alpha") = 0.01, py::arg("gamma") = 0.1, py::arg("folds") = 5,
        py::arg("kind") = "KernelRidge", py::arg("eta") = 0.01, py::arg("bandwidth") = 0.0,
        py::arg("jobs") = 1);
    m.def(
        "nogam_order",
        [](const Matrix& x, double alpha, double gamma, int folds, const std::string& kind,
           double eta, double bandwidth, int jobs) {
            return ordering_result_to_dict(nogam::nogam_order(
                x, make_reg(alpha, gamma, folds, kind), nogam::SteinConfig{eta, bandwidth},
                jobs));
        },
        py::arg("x"), py::arg("alpha") = 0.01, py::arg("gamma") = 0.1, py::arg("folds") = 5,
        py::arg("kind") = "KernelRidge", py::arg("eta") = 0.01, py::arg("bandwidth") = 0.0,
        py::arg("jobs") = 1,
        "Topological order by iterative leaf identification (score vs residual MSE)");
    m.def(
        "score_order",
        [](const Matrix& x, double eta, double bandwidth) {
            return ordering_result_to_dict(nogam::score_order(x, {eta, bandwidth}));
        },
        py::arg("x"), py::arg("eta") = 0.01, py::arg("bandwidth") = 0.0,
        "Baseline order by variance of the score-Jacobian diagonal");

    // pruning
    m.def(
        "prune",
        [](const Matrix& x, const std::vector<int>& order, double cutoff, int basis_size) {
            nogam::PruneConfig cfg;
            cfg.cutoff = cutoff;
            cfg.basis_size = basis_size;
            return dag_to_adjacency(nogam::prune(x, ordering_from_list(order), cfg));
        },
        py::arg("x"), py::arg("order"), py::arg("cutoff") = 0.001,
        py::arg("basis_size") = 10,
        "Additive-model significance pruning of the order-admitted full graph");

    // metrics
    m.def(
        "shd",
        [](const Eigen::MatrixXi& a, const Eigen::MatrixXi& b) {
            return nogam::shd(dag_from_adjacency(a), dag_from_adjacency(b));
        },
        py::arg("true_adjacency"), py::arg("est_adjacency"));
    m.def(
        "sid",
        [](const Eigen::MatrixXi& a, const Eigen::MatrixXi& b) {
            return nogam::sid(dag_from_adjacency(a), dag_from_adjacency(b));
        },
        py::arg("true_adjacency"), py::arg("est_adjacency"));
    m.def(
        "d_top",
        [](const std::vector<int>& order, const Eigen::MatrixXi& adj) {
            return nogam::d_top(ordering_from_list(order), dag_from_adjacency(adj));
        },
        py::arg("order"), py::arg("true_adjacency"));

    // entropy
    m.def("entropy_estimate", [](const Vector& v) { return nogam::entropy_estimate(v); },
          py::arg("samples"));
    m.def("gaussian_entropy", &nogam::gaussian_entropy, py::arg("variance"));
    m.def(
        "direction_test",
        [](const Vector& x, const Vector& y, const std::string& mode, double alpha,
           double gamma, int folds) {
            const auto em = mode == "gaussian" ? nogam::EntropyMode::GaussianAssumption
                                               : nogam::EntropyMode::Nonparametric;
            const auto v =
                nogam::direction_test(x, y, em, make_reg(alpha, gamma, folds, "KernelRidge"));
            py::dict out;
            out["direction"] = v.direction == nogam::Direction::Forward ? "Forward" : "Reverse";
            out["total_entropy_forward"] = v.total_entropy_forward;
            out["total_entropy_reverse"] = v.total_entropy_reverse;
            out["mode"] = mode;
            return out;
        },
        py::arg("x"), py::arg("y"), py::arg("mode") = "nonparametric",
        py::arg("alpha") = 0.01, py::arg("gamma") = 0.1, py::arg("folds") = 5);

    // pipeline
    m.def(
        "discover",
        [](const Matrix& x, double alpha, double gamma, int folds, const std::string& kind,
           double eta, double bandwidth, double cutoff, int basis_size, int jobs) {
            nogam::PruneConfig pc;
            pc.cutoff = cutoff;
            pc.basis_size = basis_size;
            const auto result = nogam::discover(x, make_reg(alpha, gamma, folds, kind),
                                                {eta, bandwidth}, pc, jobs);
            return py::make_tuple(dag_to_adjacency(result.graph),
                                  ordering_result_to_dict(result.ordering));
        },
        py::arg("x"), py::arg("alpha") = 0.01, py::arg("gamma") = 0.1, py::arg("folds") = 5,
        py::arg("kind") = "KernelRidge", py::arg("eta") = 0.01, py::arg("bandwidth") = 0.0,
        py::arg("cutoff") = 0.001, py::arg("basis_size") = 10, py::arg("jobs") = 1,
        "Full pipeline: ordering plus pruning; returns (adjacency, ordering dict)");
    m.def(
        "run_example1",
        [](int n, std::uint64_t seed) {
            const auto r = nogam::run_example1(n, seed);
            auto cell = [](const nogam::Example1Case& c) {
                py::dict d;
                d["total_entropy_forward"] = c.total_forward;
                d["total_entropy_reverse"] = c.total_reverse;
                d["verdict"] = c.verdict == nogam::Direction::Forward ? "Forward" : "Reverse";
                return d;
            };
            py::dict out;
            out["linear_nonparametric"] = cell(r.linear_nonparametric);
            out["linear_gaussian"] = cell(r.linear_gaussian);
            out["nonlinear_nonparametric"] = cell(r.nonlinear_nonparametric);
            out["nonlinear_gaussian"] = cell(r.nonlinear_gaussian);
            return out;
        },
        py::arg("n") = 2000, py::arg("seed") = 0,
        "Uniform-noise direction example under both entropy modes");
}
