#pragma once

#include "nogam/graph.hpp"
#include "nogam/regression.hpp"
#include "nogam/stein.hpp"
#include "nogam/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nogam {

struct IterationRecord {
    std::vector<int> nodes;   // remaining node ids at this iteration
    std::vector<double> stat; // per-node selection statistic; empty when forced
    int chosen = -1;
};

struct OrderingResult {
    Ordering order;  // source first, leaf last
    std::vector<IterationRecord> iterations;

    std::string to_json() const;
};

/// Score provider for the iterate-remove loop: given the current data
/// columns and their original node ids, return the n x k score matrix.
/// The default wraps stein_score; tests substitute analytic oracles.
using ScoreProvider = std::function<Matrix(const Matrix&, const std::vector<int>&)>;

ScoreProvider stein_score_provider(const SteinConfig& cfg);

/// Per-node mean squared error of predicting the score entry from the
/// node's own residual (out-of-fold, univariate, same regressor family).
/// Low MSE marks a leaf.
std::vector<double> leaf_mse_scores(const Matrix& x, const Matrix& score,
                                    const RegressorConfig& reg_cfg, int jobs = 1);
std::vector<double> leaf_mse_scores(const Matrix& x, const RegressorConfig& reg_cfg,
                                    const SteinConfig& stein_cfg, int jobs = 1);

/// Iteratively removes the argmin-MSE node (ties -> smallest node id),
/// score recomputed on the reduced columns each iteration; the last
/// remaining node is appended without statistics.
OrderingResult nogam_order(const Matrix& x, const RegressorConfig& reg_cfg,
                           const ScoreProvider& scores, int jobs = 1);
OrderingResult nogam_order(const Matrix& x, const RegressorConfig& reg_cfg,
                           const SteinConfig& stein_cfg, int jobs = 1);

/// Baseline: selection statistic is the per-node empirical variance of the
/// estimated score-Jacobian diagonal.
OrderingResult score_order(const Matrix& x, const SteinConfig& stein_cfg);

}  // namespace nogam
