#pragma once

#include "nogam/types.hpp"

namespace nogam {

/// Stein gradient estimator configuration. bandwidth <= 0 selects the
/// median heuristic (median pairwise euclidean distance over samples).
struct SteinConfig {
    double eta = 0.01;
    double bandwidth = 0.0;

    void validate() const;
};

double median_pairwise_distance(const Matrix& x);

/// First-order Stein estimate of the score at every sample:
/// S = -(K + eta I)^{-1} <grad K>, RBF Gram matrix K over rows of x.
ScoreEstimate stein_score(const Matrix& x, const SteinConfig& cfg);

/// Second-order Stein estimate of diag(grad s) per sample, same kernel
/// and ridge machinery.
Matrix stein_jacobian_diag(const Matrix& x, const SteinConfig& cfg);

}  // namespace nogam
