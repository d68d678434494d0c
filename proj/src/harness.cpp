#include "nogam/harness.hpp"

#include "nogam/io.hpp"
#include "nogam/metrics.hpp"
#include "parallel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nogam {

using nlohmann::json;

namespace {

NoiseSpec noise_spec_from_json(const json& j) {
    if (j.is_string()) return NoiseSpec::default_for(noise_family_from_string(j.get<std::string>()));
    NoiseSpec spec = NoiseSpec::default_for(noise_family_from_string(j.at("family")));
    if (j.contains("p1")) spec.p1 = j.at("p1").get<double>();
    if (j.contains("p2")) spec.p2 = j.at("p2").get<double>();
    if (j.contains("center")) spec.center = j.at("center").get<bool>();
    spec.validate();
    return spec;
}

json noise_spec_to_json(const NoiseSpec& spec) {
    return {{"family", to_string(spec.family)},
            {"p1", spec.p1},
            {"p2", spec.p2},
            {"center", spec.center}};
}

RegressorConfig regressor_from_json(const json& j) {
    RegressorConfig cfg;
    if (j.contains("kind")) {
        const std::string kind = j.at("kind");
        if (kind == "KernelRidge")
            cfg.kind = RegressorKind::KernelRidge;
        else if (kind == "LinearL1")
            cfg.kind = RegressorKind::LinearL1;
        else
            throw std::invalid_argument("config: unknown regressor kind " + kind);
    }
    if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("gamma")) cfg.gamma = j.at("gamma").get<double>();
    if (j.contains("folds")) cfg.folds = j.at("folds").get<int>();
    return cfg;
}

SteinConfig stein_from_json(const json& j) {
    SteinConfig cfg;
    if (j.contains("eta")) cfg.eta = j.at("eta").get<double>();
    if (j.contains("bandwidth")) {
        const auto& b = j.at("bandwidth");
        if (b.is_string()) {
            require(b.get<std::string>() == "median",
                    "config: stein bandwidth must be a number or \"median\"");
            cfg.bandwidth = 0.0;
        } else {
            cfg.bandwidth = b.get<double>();
        }
    }
    return cfg;
}

PruneConfig prune_from_json(const json& j) {
    PruneConfig cfg;
    if (j.contains("cutoff")) cfg.cutoff = j.at("cutoff").get<double>();
    if (j.contains("basis_size")) cfg.basis_size = j.at("basis_size").get<int>();
    return cfg;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Dag sample_graph(const std::string& kind, int d, int density, Rng& rng) {
    if (kind == "ER") return sample_er(d, density, rng);
    if (kind == "SF") return sample_sf(d, std::min(density, d - 1 > 0 ? d - 1 : 1), rng);
    throw std::invalid_argument("config: unknown graph model " + kind);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    ExperimentConfig cfg;
    if (j.contains("graph")) cfg.graph = j.at("graph").get<std::string>();
    if (j.contains("d")) cfg.d = j.at("d").get<int>();
    if (j.contains("density")) cfg.density = j.at("density").get<int>();
    if (j.contains("noise")) cfg.noise = j.at("noise").get<std::string>();
    if (j.contains("n")) cfg.n = j.at("n").get<int>();
    if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("methods")) cfg.methods = j.at("methods").get<std::vector<std::string>>();
    if (j.contains("regressor")) cfg.regressor = regressor_from_json(j.at("regressor"));
    if (j.contains("stein")) cfg.stein = stein_from_json(j.at("stein"));
    if (j.contains("prune")) cfg.prune = prune_from_json(j.at("prune"));
    if (j.contains("gp_bandwidth")) cfg.gp_bandwidth = j.at("gp_bandwidth").get<double>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
    cfg.validate();
    return cfg;
}

std::string ExperimentConfig::canonical_json() const {
    json j;
    j["graph"] = graph;
    j["d"] = d;
    j["density"] = density;
    j["noise"] = noise;
    j["n"] = n;
    j["seeds"] = seeds;
    j["methods"] = methods;
    j["regressor"] = {
        {"kind", regressor.kind == RegressorKind::KernelRidge ? "KernelRidge" : "LinearL1"},
        {"alpha", regressor.alpha},
        {"gamma", regressor.gamma},
        {"folds", regressor.folds}};
    j["stein"] = {{"eta", stein.eta}, {"bandwidth", stein.bandwidth}};
    j["prune"] = {{"cutoff", prune.cutoff}, {"basis_size", prune.basis_size}};
    j["gp_bandwidth"] = gp_bandwidth;
    return j.dump();
}

std::string ExperimentConfig::hash() const {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_json())));
    return buf;
}

void ExperimentConfig::validate() const {
    require(graph == "ER" || graph == "SF", "config: graph must be ER or SF");
    require(d >= 1, "config: d must be positive");
    require(density >= 1, "config: density must be positive");
    require(n >= 1, "config: n must be positive");
    require(!seeds.empty(), "config: seeds must be nonempty");
    require(!methods.empty(), "config: methods must be nonempty");
    for (const auto& m : methods)
        require(m == "nogam" || m == "score-baseline", "config: unknown method " + m);
    noise_family_from_string(noise);
    regressor.validate();
    stein.validate();
    prune.validate();
    require(gp_bandwidth > 0.0, "config: gp_bandwidth must be positive");
    require(jobs >= 1, "config: jobs must be positive");
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const int n_seeds = static_cast<int>(cfg.seeds.size());
    const int n_methods = static_cast<int>(cfg.methods.size());
    std::vector<ResultRow> rows(static_cast<size_t>(n_seeds) * n_methods);

    detail::parallel_for(n_seeds, cfg.jobs, [&](int si) {
        const std::uint64_t seed = cfg.seeds[si];
        for (int mi = 0; mi < n_methods; ++mi) {
            ResultRow& row = rows[static_cast<size_t>(si) * n_methods + mi];
            row.seed = seed;
            row.method = cfg.methods[mi];
            row.graph_type = cfg.graph + std::to_string(cfg.density);
            row.d = cfg.d;
            row.noise = cfg.noise;
        }

        Dag truth;
        GeneratedData gen;
        try {
            Rng rng(seed);
            truth = sample_graph(cfg.graph, cfg.d, cfg.density, rng);
            const auto family = noise_family_from_string(cfg.noise);
            const auto spec =
                ScmSpec::gp_anm(truth, NoiseSpec::default_for(family), cfg.gp_bandwidth);
            gen = generate_dataset(spec, cfg.n, rng);
        } catch (const std::exception& e) {
            for (int mi = 0; mi < n_methods; ++mi)
                rows[static_cast<size_t>(si) * n_methods + mi].error =
                    std::string("generate: ") + e.what();
            return;
        }

        for (int mi = 0; mi < n_methods; ++mi) {
            ResultRow& row = rows[static_cast<size_t>(si) * n_methods + mi];
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const OrderingResult ord = cfg.methods[mi] == "nogam"
                                               ? nogam_order(gen.data, cfg.regressor, cfg.stein)
                                               : score_order(gen.data, cfg.stein);
                const Dag est = prune(gen.data, ord.order, cfg.prune);
                row.shd = shd(truth, est);
                row.sid = sid(truth, est);
                row.d_top = d_top(ord.order, truth);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            const auto t1 = std::chrono::steady_clock::now();
            row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
    });
    return rows;
}

std::string results_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "seed,method,graph_type,d,noise,shd,sid,d_top,wall_ms,error\n";
    char wall[32];
    for (const auto& r : rows) {
        std::snprintf(wall, sizeof(wall), "%.3f", r.wall_ms);
        out << r.seed << ',' << r.method << ',' << r.graph_type << ',' << r.d << ','
            << r.noise << ',';
        if (r.error.empty())
            out << r.shd << ',' << r.sid << ',' << r.d_top;
        else
            out << ",,";
        out << ',' << wall << ',' << r.error << '\n';
    }
    return out.str();
}

namespace {

struct MeanStd {
    double mean = 0.0, stddev = 0.0;
};

MeanStd mean_std(const std::vector<double>& v) {
    MeanStd ms;
    if (v.empty()) return ms;
    for (double x : v) ms.mean += x;
    ms.mean /= static_cast<double>(v.size());
    for (double x : v) ms.stddev += (x - ms.mean) * (x - ms.mean);
    ms.stddev = std::sqrt(ms.stddev / static_cast<double>(v.size()));
    return ms;
}

}  // namespace

std::string summary_table(const std::vector<ResultRow>& rows) {
    std::vector<std::string> methods;
    for (const auto& r : rows)
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
            methods.push_back(r.method);

    std::ostringstream out;
    char line[192];
    std::snprintf(line, sizeof(line), "%-16s %-14s %-14s %-14s %s\n", "method", "shd", "sid",
                  "d_top", "rows");
    out << line;
    for (const auto& m : methods) {
        std::vector<double> shd_v, sid_v, dtop_v;
        int failed = 0, total = 0;
        for (const auto& r : rows) {
            if (r.method != m) continue;
            ++total;
            if (!r.error.empty()) {
                ++failed;
                continue;
            }
            shd_v.push_back(r.shd);
            sid_v.push_back(r.sid);
            dtop_v.push_back(r.d_top);
        }
        const auto s = mean_std(shd_v), i = mean_std(sid_v), t = mean_std(dtop_v);
        char cell_s[32], cell_i[32], cell_t[32];
        std::snprintf(cell_s, sizeof(cell_s), "%.1f +- %.1f", s.mean, s.stddev);
        std::snprintf(cell_i, sizeof(cell_i), "%.1f +- %.1f", i.mean, i.stddev);
        std::snprintf(cell_t, sizeof(cell_t), "%.1f +- %.1f", t.mean, t.stddev);
        std::snprintf(line, sizeof(line), "%-16s %-14s %-14s %-14s %d", m.c_str(), cell_s,
                      cell_i, cell_t, total);
        out << line;
        if (failed > 0) out << "  (" << failed << " failed)";
        out << '\n';
    }
    return out.str();
}

DiscoverResult discover(const Matrix& data, const RegressorConfig& reg_cfg,
                        const SteinConfig& stein_cfg, const PruneConfig& prune_cfg,
                        int jobs) {
    require(data.rows() >= 2, "discover: need at least two rows");
    DiscoverResult result;
    result.ordering = nogam_order(data, reg_cfg, stein_cfg, jobs);
    result.graph = prune(data, result.ordering.order, prune_cfg);
    return result;
}

std::string Example1Report::to_json() const {
    auto cell = [](const Example1Case& c) {
        return json{{"total_entropy_forward", c.total_forward},
                    {"total_entropy_reverse", c.total_reverse},
                    {"verdict", c.verdict == Direction::Forward ? "Forward" : "Reverse"}};
    };
    json j;
    j["linear"] = {{"nonparametric", cell(linear_nonparametric)},
                   {"gaussian_assumption", cell(linear_gaussian)}};
    j["nonlinear"] = {{"nonparametric", cell(nonlinear_nonparametric)},
                      {"gaussian_assumption", cell(nonlinear_gaussian)}};
    return j.dump(2);
}

namespace {

double variance_of(const Vector& v) {
    const double mean = v.mean();
    return (v.array() - mean).square().sum() / static_cast<double>(v.size() - 1);
}

Example1Case example1_case(const Vector& x, const Vector& y, const Vector& rev_residual,
                           EntropyMode mode, double exact_noise_entropy,
                           double exact_noise_variance) {
    Example1Case c;
    if (mode == EntropyMode::Nonparametric) {
        c.total_forward = entropy_estimate(x) + exact_noise_entropy;
        c.total_reverse = entropy_estimate(y) + entropy_estimate(rev_residual);
    } else {
        c.total_forward =
            gaussian_entropy(variance_of(x)) + gaussian_entropy(exact_noise_variance);
        c.total_reverse =
            gaussian_entropy(variance_of(y)) + gaussian_entropy(variance_of(rev_residual));
    }
    c.verdict = c.total_forward <= c.total_reverse ? Direction::Forward : Direction::Reverse;
    return c;
}

}  // namespace

Example1Report run_example1(int n, std::uint64_t seed, const RegressorConfig& reg_cfg,
                            std::string* samples_csv) {
    require(n >= 50, "run_example1: need at least 50 samples");
    Rng rng(seed);
    // the paper's supports, uncentered: cause on [0,5], noise on [1,4]
    const auto x_spec = NoiseSpec::uniform(0.0, 5.0, false);
    const auto noise_spec = NoiseSpec::uniform(1.0, 4.0, false);
    const Vector x = sample_noise(x_spec, n, rng);
    const Vector n2 = sample_noise(noise_spec, n, rng);
    const Vector y_linear = x + n2;
    const Vector y_nonlinear = x.array().pow(1.1) + n2.array();

    const double h_noise = noise_spec.analytic_entropy();     // ln 3
    const double var_noise = noise_spec.variance();           // 9/12

    Example1Report report;
    const Vector rev_lin = x - oof_predict(y_linear, x, reg_cfg);
    const Vector rev_nonlin = x - oof_predict(y_nonlinear, x, reg_cfg);

    report.linear_nonparametric =
        example1_case(x, y_linear, rev_lin, EntropyMode::Nonparametric, h_noise, var_noise);
    report.linear_gaussian = example1_case(x, y_linear, rev_lin,
                                           EntropyMode::GaussianAssumption, h_noise, var_noise);
    report.nonlinear_nonparametric = example1_case(x, y_nonlinear, rev_nonlin,
                                                   EntropyMode::Nonparametric, h_noise, var_noise);
    report.nonlinear_gaussian = example1_case(
        x, y_nonlinear, rev_nonlin, EntropyMode::GaussianAssumption, h_noise, var_noise);

    if (samples_csv) {
        const Vector fwd_lin = y_linear - oof_predict(x, y_linear, reg_cfg);
        const Vector fwd_nonlin = y_nonlinear - oof_predict(x, y_nonlinear, reg_cfg);
        Matrix table(n, 7);
        table.col(0) = x;
        table.col(1) = y_linear;
        table.col(2) = fwd_lin;
        table.col(3) = rev_lin;
        table.col(4) = y_nonlinear;
        table.col(5) = fwd_nonlin;
        table.col(6) = rev_nonlin;
        *samples_csv = "x,y_linear,fwd_residual_linear,rev_residual_linear,"
                       "y_nonlinear,fwd_residual_nonlinear,rev_residual_nonlinear\n" +
                       write_csv_matrix(table);
    }
    return report;
}

GenOutput generate_from_json(const std::string& config_text) {
    json j;
    try {
        j = json::parse(config_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("gen config: ") + e.what());
    }

    const std::uint64_t seed = j.value("seed", 0ull);
    const int n = j.at("n").get<int>();
    const double bandwidth = j.value("gp_bandwidth", 1.0);
    Rng rng(seed);

    Dag graph;
    const auto& jg = j.at("graph");
    if (jg.contains("edges")) {
        graph = Dag(jg.at("d").get<int>());
        for (const auto& e : jg.at("edges"))
            graph.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
        require(graph.is_acyclic(), "gen config: edge list contains a cycle");
    } else {
        const std::string type = jg.at("type");
        graph = sample_graph(type, jg.at("d").get<int>(), jg.value("density", 1), rng);
    }

    const int d = graph.node_count();
    std::vector<NoiseSpec> noise;
    const auto& jn = j.at("noise");
    if (jn.is_array()) {
        require(static_cast<int>(jn.size()) == d, "gen config: one noise entry per node");
        for (const auto& item : jn) noise.push_back(noise_spec_from_json(item));
    } else {
        noise.assign(d, noise_spec_from_json(jn));
    }

    ScmSpec spec;
    spec.graph = graph;
    spec.mechanisms.assign(d, Mechanism::gp(bandwidth));
    spec.noise = noise;

    GenOutput out;
    out.data = generate_dataset(spec, n, rng).data;

    json meta;
    meta["d"] = d;
    meta["n"] = n;
    meta["seed"] = seed;
    meta["gp_bandwidth"] = bandwidth;
    meta["edges"] = json::array();
    for (auto [i, k] : graph.edges()) meta["edges"].push_back({i, k});
    meta["noise"] = json::array();
    for (const auto& nz : noise) meta["noise"].push_back(noise_spec_to_json(nz));
    out.metadata_json = meta.dump(2);
    return out;
}

}  // namespace nogam
