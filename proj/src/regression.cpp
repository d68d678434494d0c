#include "nogam/regression.hpp"

#include "kernels.hpp"
#include "parallel.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace nogam {

void RegressorConfig::validate() const {
    require(alpha > 0.0, "RegressorConfig: alpha must be positive");
    if (kind == RegressorKind::KernelRidge)
        require(gamma > 0.0, "RegressorConfig: gamma must be positive");
    require(folds >= 2, "RegressorConfig: folds must be >= 2");
}

std::vector<std::pair<int, int>> fold_blocks(int n, int k) {
    require(k >= 1 && k <= n, "fold_blocks: need 1 <= k <= n");
    std::vector<std::pair<int, int>> blocks;
    blocks.reserve(k);
    const int base = n / k, extra = n % k;
    int begin = 0;
    for (int f = 0; f < k; ++f) {
        const int len = base + (f < extra ? 1 : 0);
        blocks.emplace_back(begin, begin + len);
        begin += len;
    }
    return blocks;
}

Vector kr_fit_predict(const Matrix& x_train, const Vector& y_train,
                      const Matrix& x_test, const RegressorConfig& cfg) {
    cfg.validate();
    const auto m = x_train.rows();
    require(m >= 1, "kr_fit_predict: empty training set");
    require(y_train.size() == m, "kr_fit_predict: x/y size mismatch");
    require(x_test.cols() == x_train.cols(), "kr_fit_predict: feature count mismatch");
    require(x_train.allFinite() && y_train.allFinite() && x_test.allFinite(),
            "kr_fit_predict: non-finite inputs");

    Matrix k = (-cfg.gamma * detail::pairwise_sq_dists(x_train)).array().exp();
    k.diagonal().array() += cfg.alpha;
    Eigen::LLT<Matrix> llt(k);
    if (llt.info() != Eigen::Success)
        throw NumericalError("kr_fit_predict: kernel system not positive definite");
    const Vector w = llt.solve(y_train);

    const Matrix k_test =
        (-cfg.gamma * detail::pairwise_sq_dists(x_test, x_train)).array().exp();
    return k_test * w;
}

namespace {

struct LassoFit {
    Vector w;
    double intercept = 0.0;
};

// Coordinate descent on (1/2n)|y - Xw - b|^2 + alpha |w|_1, intercept via
// centering. Converges when the largest coefficient update is below tol.
LassoFit lasso_fit(const Matrix& x, const Vector& y, double alpha) {
    constexpr double kTol = 1e-6;
    constexpr int kMaxIter = 10000;
    const auto n = x.rows();
    const auto p = x.cols();

    const Eigen::RowVectorXd x_mean = x.colwise().mean();
    const double y_mean = y.mean();
    const Matrix xc = x.rowwise() - x_mean;
    const Vector yc = y.array() - y_mean;

    const Vector col_sq = xc.colwise().squaredNorm() / static_cast<double>(n);
    Vector w = Vector::Zero(p);
    Vector residual = yc;

    for (int iter = 0; iter < kMaxIter; ++iter) {
        double max_delta = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (col_sq[j] <= 0.0) continue;  // constant column carries no signal
            const double old = w[j];
            const double rho = xc.col(j).dot(residual) / n + col_sq[j] * old;
            double next = 0.0;
            if (rho > alpha)
                next = (rho - alpha) / col_sq[j];
            else if (rho < -alpha)
                next = (rho + alpha) / col_sq[j];
            if (next != old) {
                residual -= (next - old) * xc.col(j);
                w[j] = next;
                max_delta = std::max(max_delta, std::abs(next - old));
            }
        }
        if (max_delta < kTol) break;
    }

    LassoFit fit;
    fit.w = w;
    fit.intercept = y_mean - x_mean.dot(w);
    return fit;
}

}  // namespace

Vector fit_predict(const Matrix& x_train, const Vector& y_train,
                   const Matrix& x_test, const RegressorConfig& cfg) {
    if (cfg.kind == RegressorKind::KernelRidge)
        return kr_fit_predict(x_train, y_train, x_test, cfg);
    cfg.validate();
    require(x_train.rows() == y_train.size(), "fit_predict: x/y size mismatch");
    require(x_test.cols() == x_train.cols(), "fit_predict: feature count mismatch");
    const LassoFit fit = lasso_fit(x_train, y_train, cfg.alpha);
    return (x_test * fit.w).array() + fit.intercept;
}

Vector oof_predict(const Matrix& x, const Vector& y, const RegressorConfig& cfg) {
    cfg.validate();
    const auto n = x.rows();
    require(y.size() == n, "oof_predict: x/y size mismatch");
    require(cfg.folds <= n, "oof_predict: more folds than samples");

    const auto blocks = fold_blocks(static_cast<int>(n), cfg.folds);
    Vector out(n);
    for (const auto& [begin, end] : blocks) {
        const auto test_len = end - begin;
        const auto train_len = n - test_len;
        Matrix x_train(train_len, x.cols());
        Vector y_train(train_len);
        x_train.topRows(begin) = x.topRows(begin);
        y_train.head(begin) = y.head(begin);
        x_train.bottomRows(train_len - begin) = x.bottomRows(n - end);
        y_train.tail(train_len - begin) = y.tail(n - end);

        out.segment(begin, test_len) =
            fit_predict(x_train, y_train, x.middleRows(begin, test_len), cfg);
    }
    return out;
}

Matrix estimate_residuals(const Matrix& x, const RegressorConfig& cfg, int jobs) {
    cfg.validate();
    const auto n = x.rows();
    const auto d = x.cols();
    require(n >= 1 && d >= 1, "estimate_residuals: empty data");

    Matrix r(n, d);
    if (d == 1) {
        r.col(0) = x.col(0).array() - x.col(0).mean();
        return r;
    }

    detail::parallel_for(static_cast<int>(d), jobs, [&](int i) {
        Matrix features(n, d - 1);
        Eigen::Index c = 0;
        for (Eigen::Index j = 0; j < d; ++j)
            if (j != i) features.col(c++) = x.col(j);
        r.col(i) = x.col(i) - oof_predict(features, x.col(i), cfg);
    });
    return r;
}

}  // namespace nogam
