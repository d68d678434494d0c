#include "nogam/regression.hpp"
#include "nogam/scm.hpp"

#include <doctest.h>

#include <Eigen/LU>

#include <cmath>

using namespace nogam;

TEST_SUITE_BEGIN("regression");

TEST_CASE("kr_fit_predict closed forms") {
    RegressorConfig cfg;

    SUBCASE("zero targets give zero predictions") {
        Matrix x = Matrix::Random(20, 3);
        const Vector pred = kr_fit_predict(x, Vector::Zero(20), x, cfg);
        CHECK(pred.cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("single training point") {
        // K = [1], prediction at the same point is 1/(1+alpha)
        Matrix x0 = Matrix::Zero(1, 1);
        Vector y(1);
        y << 1.0;
        const Vector pred = kr_fit_predict(x0, y, x0, cfg);
        CHECK(pred[0] == doctest::Approx(1.0 / (1.0 + cfg.alpha)).epsilon(1e-12));
    }

    SUBCASE("matches a dense solve of the regularized system") {
        Rng rng(1);
        std::normal_distribution<double> unit(0.0, 1.0);
        Matrix x(5, 2);
        Vector y(5);
        for (int i = 0; i < 5; ++i) {
            x(i, 0) = unit(rng);
            x(i, 1) = unit(rng);
            y[i] = unit(rng);
        }
        Matrix k(5, 5);
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b)
                k(a, b) = std::exp(-cfg.gamma * (x.row(a) - x.row(b)).squaredNorm());
        const Vector w = (k + cfg.alpha * Matrix::Identity(5, 5)).fullPivLu().solve(y);
        const Vector expected = k * w;

        const Vector pred = kr_fit_predict(x, y, x, cfg);
        CHECK((pred - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("kr_fit_predict is linear in y") {
    Rng rng(2);
    std::normal_distribution<double> unit(0.0, 1.0);
    Matrix x(30, 2), xt(10, 2);
    Vector y1(30), y2(30);
    for (int i = 0; i < 30; ++i) {
        x(i, 0) = unit(rng);
        x(i, 1) = unit(rng);
        y1[i] = unit(rng);
        y2[i] = unit(rng);
    }
    for (int i = 0; i < 10; ++i) {
        xt(i, 0) = unit(rng);
        xt(i, 1) = unit(rng);
    }
    RegressorConfig cfg;
    const double a = 2.5, b = -0.7;
    const Vector lhs = kr_fit_predict(x, a * y1 + b * y2, xt, cfg);
    const Vector rhs =
        a * kr_fit_predict(x, y1, xt, cfg) + b * kr_fit_predict(x, y2, xt, cfg);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("increasing alpha shrinks predictions") {
    Rng rng(3);
    std::normal_distribution<double> unit(0.0, 1.0);
    Matrix x(40, 1);
    Vector y(40);
    for (int i = 0; i < 40; ++i) {
        x(i, 0) = unit(rng);
        y[i] = std::sin(x(i, 0)) + 0.1 * unit(rng);
    }
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : {0.01, 0.1, 1.0}) {
        RegressorConfig cfg;
        cfg.alpha = alpha;
        const double norm = kr_fit_predict(x, y, x, cfg).norm();
        CHECK(norm < prev);
        prev = norm;
    }
}

TEST_CASE("oof_predict constant targets") {
    Matrix x = Matrix::Random(25, 2);
    const Vector y = Vector::Constant(25, 3.0);

    RegressorConfig kr;
    const Vector pred_kr = oof_predict(x, y, kr);
    // kernel ridge shrinks the constant slightly
    for (int i = 0; i < 25; ++i) CHECK(pred_kr[i] == doctest::Approx(3.0).epsilon(0.05));

    RegressorConfig lasso;
    lasso.kind = RegressorKind::LinearL1;
    const Vector pred_l1 = oof_predict(x, y, lasso);
    for (int i = 0; i < 25; ++i) CHECK(pred_l1[i] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("fold partition covers every index once") {
    const auto blocks = fold_blocks(23, 5);
    CHECK(blocks.size() == 5);
    int covered = 0;
    int prev_end = 0;
    for (auto [begin, end] : blocks) {
        CHECK(begin == prev_end);  // contiguous, disjoint
        covered += end - begin;
        prev_end = end;
    }
    CHECK(covered == 23);
    CHECK_THROWS_AS(fold_blocks(3, 5), std::invalid_argument);
}

TEST_CASE("oof_predict never leaks the held-out fold") {
    Rng rng(4);
    std::normal_distribution<double> unit(0.0, 1.0);
    const int n = 30;
    Matrix x(n, 1);
    Vector y(n);
    for (int i = 0; i < n; ++i) {
        x(i, 0) = unit(rng);
        y[i] = unit(rng);
    }
    RegressorConfig cfg;
    const Vector base = oof_predict(x, y, cfg);

    const int j = 7;  // perturb one target
    Vector y2 = y;
    y2[j] += 10.0;
    const Vector bumped = oof_predict(x, y2, cfg);

    const auto blocks = fold_blocks(n, cfg.folds);
    for (auto [begin, end] : blocks) {
        const bool fold_of_j = j >= begin && j < end;
        for (int i = begin; i < end; ++i) {
            if (fold_of_j)
                CHECK(bumped[i] == base[i]);  // model never saw the perturbed index
            else
                CHECK(bumped[i] != base[i]);
        }
    }
}

TEST_CASE("oof_predict composes kr_fit_predict over manual folds") {
    Matrix x(4, 1);
    x << 0.0, 1.0, 2.0, 3.0;
    Vector y(4);
    y << 1.0, -1.0, 2.0, 0.5;
    RegressorConfig cfg;
    cfg.folds = 2;
    const Vector pred = oof_predict(x, y, cfg);

    const Vector first =
        kr_fit_predict(x.bottomRows(2), y.tail(2), x.topRows(2), cfg);
    const Vector second = kr_fit_predict(x.topRows(2), y.head(2), x.bottomRows(2), cfg);
    CHECK((pred.head(2).array() == first.array()).all());
    CHECK((pred.tail(2).array() == second.array()).all());
}

TEST_CASE("estimate_residuals single column is centered") {
    Matrix x(6, 1);
    x << 1, 2, 3, 4, 5, 6;
    const Matrix r = estimate_residuals(x, {});
    CHECK(r.col(0).mean() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r(0, 0) == doctest::Approx(-2.5));
}

TEST_CASE("leaf residual recovers the noise on a bivariate cubic") {
    const auto scm = AnalyticScm::bivariate_cubic_gaussian();
    Rng rng(6);
    const auto gen = scm.generate(1000, rng);
    const Matrix r = estimate_residuals(gen.data, {});

    const Vector rl = r.col(1);
    const Vector nz = gen.noise.col(1);
    const double corr =
        ((rl.array() - rl.mean()) * (nz.array() - nz.mean())).mean() /
        (std::sqrt((rl.array() - rl.mean()).square().mean()) *
         std::sqrt((nz.array() - nz.mean()).square().mean()));
    CHECK(corr >= 0.9);

    // residual columns are near zero-mean
    for (int i = 0; i < 2; ++i) {
        const double sd = std::sqrt((r.col(i).array() - r.col(i).mean()).square().mean());
        CHECK(std::abs(r.col(i).mean()) <= 0.05 * sd);
    }
}

TEST_CASE("lasso regression drives irrelevant coefficients to zero") {
    Rng rng(8);
    std::normal_distribution<double> unit(0.0, 1.0);
    const int n = 200;
    Matrix x(n, 3);
    Vector y(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < 3; ++j) x(i, j) = unit(rng);
        y[i] = 2.0 * x(i, 0) + 0.05 * unit(rng);  // only the first feature matters
    }
    RegressorConfig cfg;
    cfg.kind = RegressorKind::LinearL1;
    cfg.alpha = 0.1;
    const Vector pred = fit_predict(x, y, x, cfg);
    const double rel_err = (pred - y).norm() / y.norm();
    CHECK(rel_err < 0.15);

    // an all-noise target should predict near the constant mean
    Vector noise_y(n);
    for (int i = 0; i < n; ++i) noise_y[i] = unit(rng);
    const Vector flat = fit_predict(x, noise_y, x, cfg);
    const double spread = (flat.array() - flat.mean()).abs().maxCoeff();
    CHECK(spread < 0.2);
}

TEST_SUITE_END();
