#include "nogam/graph.hpp"
#include "nogam/harness.hpp"
#include "nogam/io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

int run_bench(const std::string& config_path, const std::string& out_path, int jobs_override,
              const std::vector<std::uint64_t>& seeds_override) {
    auto cfg = nogam::ExperimentConfig::from_json_text(nogam::read_text_file(config_path));
    if (jobs_override > 0) cfg.jobs = jobs_override;
    if (!seeds_override.empty()) cfg.seeds = seeds_override;
    cfg.validate();

    std::cerr << "bench: " << cfg.graph << cfg.density << " d=" << cfg.d << " n=" << cfg.n
              << " noise=" << cfg.noise << " seeds=" << cfg.seeds.size()
              << " config_hash=" << cfg.hash() << "\n";

    const auto rows = nogam::run_experiment(cfg);
    const std::string csv = nogam::results_csv(rows);
    if (out_path.empty())
        std::cout << csv;
    else
        nogam::write_text_file(out_path, csv);
    std::cerr << nogam::summary_table(rows);

    for (const auto& r : rows)
        if (!r.error.empty()) return 1;
    return 0;
}

int run_discover(const std::string& csv_path, const nogam::RegressorConfig& reg,
                 const nogam::SteinConfig& stein, const nogam::PruneConfig& prune_cfg,
                 int jobs, const std::string& graph_out, const std::string& order_out) {
    const nogam::Matrix data = nogam::read_csv_matrix_file(csv_path);
    const auto result = nogam::discover(data, reg, stein, prune_cfg, jobs);

    const std::string edges = nogam::to_edge_list(result.graph);
    const std::string order_json = result.ordering.to_json();
    if (graph_out.empty())
        std::cout << edges;
    else
        nogam::write_text_file(graph_out, edges);
    if (order_out.empty())
        std::cout << order_json << "\n";
    else
        nogam::write_text_file(order_out, order_json);
    return 0;
}

int run_example1_cmd(int n, std::uint64_t seed, const std::string& csv_out) {
    std::string samples;
    const auto report =
        nogam::run_example1(n, seed, {}, csv_out.empty() ? nullptr : &samples);
    if (!csv_out.empty()) nogam::write_text_file(csv_out, samples);
    std::cout << report.to_json() << "\n";
    return 0;
}

int run_gen(const std::string& config_path, const std::string& data_out,
            const std::string& meta_out) {
    const auto out = nogam::generate_from_json(nogam::read_text_file(config_path));
    const std::string csv = nogam::write_csv_matrix(out.data);
    if (data_out.empty())
        std::cout << csv;
    else
        nogam::write_text_file(data_out, csv);
    if (!meta_out.empty()) nogam::write_text_file(meta_out, out.metadata_json);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NoGAM causal discovery: ordering, pruning and benchmarks"};
    app.require_subcommand(1);

    // bench
    std::string bench_config, bench_out;
    int bench_jobs = 0;
    std::vector<std::uint64_t> bench_seeds;
    auto* bench = app.add_subcommand("bench", "run a benchmark sweep from a JSON config");
    bench->add_option("config", bench_config, "experiment config JSON")->required();
    bench->add_option("-o,--out", bench_out, "results CSV path (default: stdout)");
    bench->add_option("-j,--jobs", bench_jobs, "parallel seed workers (overrides config)");
    bench->add_option("--seeds", bench_seeds, "override the config seed list");

    // discover
    std::string disc_csv, disc_graph_out, disc_order_out;
    nogam::RegressorConfig disc_reg;
    nogam::SteinConfig disc_stein;
    nogam::PruneConfig disc_prune;
    int disc_jobs = 1;
    auto* disc = app.add_subcommand("discover", "infer a DAG from a CSV dataset");
    disc->add_option("data", disc_csv, "headerless numeric CSV, one column per variable")
        ->required();
    disc->add_option("--alpha", disc_reg.alpha, "regression regularization");
    disc->add_option("--gamma", disc_reg.gamma, "RBF kernel width");
    disc->add_option("--folds", disc_reg.folds, "cross-fitting folds");
    disc->add_option("--eta", disc_stein.eta, "stein ridge regularizer");
    disc->add_option("--bandwidth", disc_stein.bandwidth,
                     "stein kernel bandwidth (0 = median heuristic)");
    disc->add_option("--cutoff", disc_prune.cutoff, "pruning significance threshold");
    disc->add_option("--basis-size", disc_prune.basis_size, "spline knots per parent");
    disc->add_option("-j,--jobs", disc_jobs, "parallel per-node regressions");
    disc->add_option("--out-graph", disc_graph_out, "edge list output path");
    disc->add_option("--out-order", disc_order_out, "ordering JSON output path");

    // example1
    int ex1_n = 2000;
    std::uint64_t ex1_seed = 0;
    std::string ex1_csv;
    auto* ex1 = app.add_subcommand("example1",
                                   "uniform-noise direction example, both entropy modes");
    ex1->add_option("-n,--samples", ex1_n, "sample count");
    ex1->add_option("--seed", ex1_seed, "rng seed");
    ex1->add_option("--csv", ex1_csv, "write (x, y, residuals) samples CSV here");

    // gen
    std::string gen_config, gen_out, gen_meta;
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset from a JSON spec");
    gen->add_option("config", gen_config, "SCM spec JSON")->required();
    gen->add_option("-o,--out", gen_out, "dataset CSV path (default: stdout)");
    gen->add_option("-m,--meta", gen_meta, "metadata JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench->parsed()) return run_bench(bench_config, bench_out, bench_jobs, bench_seeds);
        if (disc->parsed())
            return run_discover(disc_csv, disc_reg, disc_stein, disc_prune, disc_jobs,
                                disc_graph_out, disc_order_out);
        if (ex1->parsed()) return run_example1_cmd(ex1_n, ex1_seed, ex1_csv);
        if (gen->parsed()) return run_gen(gen_config, gen_out, gen_meta);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
