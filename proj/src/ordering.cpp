#include "nogam/ordering.hpp"

#include "parallel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace nogam {

std::string OrderingResult::to_json() const {
    nlohmann::json j;
    j["order"] = order.perm;
    j["iterations"] = nlohmann::json::array();
    for (const auto& it : iterations) {
        nlohmann::json rec;
        rec["nodes"] = it.nodes;
        rec["stat"] = it.stat;
        rec["chosen"] = it.chosen;
        j["iterations"].push_back(std::move(rec));
    }
    return j.dump();
}

ScoreProvider stein_score_provider(const SteinConfig& cfg) {
    return [cfg](const Matrix& x, const std::vector<int>&) { return stein_score(x, cfg).s; };
}

std::vector<double> leaf_mse_scores(const Matrix& x, const Matrix& score,
                                    const RegressorConfig& reg_cfg, int jobs) {
    const auto n = x.rows();
    const auto d = x.cols();
    require(score.rows() == n && score.cols() == d, "leaf_mse_scores: score shape mismatch");

    const Matrix residuals = estimate_residuals(x, reg_cfg, jobs);
    std::vector<double> mse(d);
    detail::parallel_for(static_cast<int>(d), jobs, [&](int i) {
        const Vector pred = oof_predict(residuals.col(i), score.col(i), reg_cfg);
        mse[i] = (pred - score.col(i)).squaredNorm() / static_cast<double>(n);
    });
    return mse;
}

std::vector<double> leaf_mse_scores(const Matrix& x, const RegressorConfig& reg_cfg,
                                    const SteinConfig& stein_cfg, int jobs) {
    return leaf_mse_scores(x, stein_score(x, stein_cfg).s, reg_cfg, jobs);
}

namespace {

Matrix drop_column(const Matrix& x, int col) {
    Matrix out(x.rows(), x.cols() - 1);
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < x.cols(); ++j)
        if (j != col) out.col(c++) = x.col(j);
    return out;
}

/// Shared iterate-remove loop: stat_fn scores the remaining columns, the
/// argmin node is peeled off (ties -> smallest node id; remaining ids stay
/// ascending so a linear scan realizes the tie-break).
template <class StatFn>
OrderingResult iterative_leaf_removal(const Matrix& x, StatFn&& stat_fn) {
    const int d = static_cast<int>(x.cols());
    require(d >= 1, "ordering: empty data");

    std::vector<int> remaining(d);
    for (int i = 0; i < d; ++i) remaining[i] = i;

    Matrix data = x;
    OrderingResult result;
    std::vector<int> leaf_first;
    leaf_first.reserve(d);

    while (remaining.size() > 1) {
        const std::vector<double> stat = stat_fn(data, remaining);
        int best = 0;
        for (int k = 1; k < static_cast<int>(stat.size()); ++k)
            if (stat[k] < stat[best]) best = k;

        result.iterations.push_back({remaining, stat, remaining[best]});
        leaf_first.push_back(remaining[best]);
        data = drop_column(data, best);
        remaining.erase(remaining.begin() + best);
    }
    // last node is a forced choice, no statistics computed
    result.iterations.push_back({remaining, {}, remaining[0]});
    leaf_first.push_back(remaining[0]);

    result.order.perm.assign(leaf_first.rbegin(), leaf_first.rend());
    return result;
}

}  // namespace

OrderingResult nogam_order(const Matrix& x, const RegressorConfig& reg_cfg,
                           const ScoreProvider& scores, int jobs) {
    reg_cfg.validate();
    require(x.rows() >= reg_cfg.folds, "nogam_order: need at least `folds` samples");
    return iterative_leaf_removal(x, [&](const Matrix& data, const std::vector<int>& ids) {
        return leaf_mse_scores(data, scores(data, ids), reg_cfg, jobs);
    });
}

OrderingResult nogam_order(const Matrix& x, const RegressorConfig& reg_cfg,
                           const SteinConfig& stein_cfg, int jobs) {
    return nogam_order(x, reg_cfg, stein_score_provider(stein_cfg), jobs);
}

OrderingResult score_order(const Matrix& x, const SteinConfig& stein_cfg) {
    stein_cfg.validate();
    require(x.rows() >= 2, "score_order: need at least two samples");
    return iterative_leaf_removal(x, [&](const Matrix& data, const std::vector<int>&) {
        const Matrix jac = stein_jacobian_diag(data, stein_cfg);
        std::vector<double> var(jac.cols());
        for (Eigen::Index j = 0; j < jac.cols(); ++j) {
            const double mean = jac.col(j).mean();
            var[j] = (jac.col(j).array() - mean).square().sum() /
                     static_cast<double>(jac.rows());
        }
        return var;
    });
}

}  // namespace nogam
