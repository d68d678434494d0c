#pragma once

#include "nogam/types.hpp"

#include <utility>
#include <vector>

namespace nogam {

enum class RegressorKind { KernelRidge, LinearL1 };

struct RegressorConfig {
    RegressorKind kind = RegressorKind::KernelRidge;
    double alpha = 0.01;  // ridge / l1 penalty strength
    double gamma = 0.1;   // RBF width, KernelRidge only
    int folds = 5;

    void validate() const;
};

/// Contiguous K-fold partition of [0, n): k (begin, end) half-open blocks,
/// sizes differing by at most one.
std::vector<std::pair<int, int>> fold_blocks(int n, int k);

/// Kernel ridge with RBF kernel exp(-gamma |u - v|^2); solves
/// (K + alpha I) w = y and predicts K_test w. No intercept.
Vector kr_fit_predict(const Matrix& x_train, const Vector& y_train,
                      const Matrix& x_test, const RegressorConfig& cfg);

/// Dispatch on cfg.kind (LinearL1 = lasso coordinate descent with intercept).
Vector fit_predict(const Matrix& x_train, const Vector& y_train,
                   const Matrix& x_test, const RegressorConfig& cfg);

/// Out-of-fold prediction: each sample is predicted by the model whose
/// training fold excluded it. Deterministic contiguous-block folds.
Vector oof_predict(const Matrix& x, const Vector& y, const RegressorConfig& cfg);

/// R[:,i] = x[:,i] - oof_predict(x without column i, x[:,i]).
/// For d = 1 the residual is the centered column.
Matrix estimate_residuals(const Matrix& x, const RegressorConfig& cfg, int jobs = 1);

}  // namespace nogam
