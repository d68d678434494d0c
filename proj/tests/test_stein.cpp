#include "nogam/scm.hpp"
#include "nogam/stein.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace nogam;

namespace {

// MSE between the estimate and the analytic score -x, restricted to samples
// between the empirical 5% and 95% quantiles.
double central_mse_vs_gaussian(const Vector& x, const Vector& est) {
    const int n = static_cast<int>(x.size());
    std::vector<double> sorted(x.data(), x.data() + n);
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted[n / 20], hi = sorted[n - 1 - n / 20];
    double mse = 0.0;
    int used = 0;
    for (int i = 0; i < n; ++i) {
        if (x[i] < lo || x[i] > hi) continue;
        const double err = est[i] + x[i];
        mse += err * err;
        ++used;
    }
    return mse / used;
}

}  // namespace

TEST_SUITE_BEGIN("stein");

TEST_CASE("stein_score recovers the 1d gaussian score") {
    Rng rng(1);
    const Vector x = sample_noise(NoiseSpec::normal(), 1000, rng);
    const auto est = stein_score(x, {});
    CHECK(central_mse_vs_gaussian(x, est.s.col(0)) <= 0.1);
    // score of a symmetric density averages to ~0
    CHECK(std::abs(est.s.col(0).mean()) <= 0.05);
}

TEST_CASE("stein_score on independent coordinates stays separable") {
    Rng rng(2);
    Matrix x(1000, 2);
    x.col(0) = sample_noise(NoiseSpec::normal(), 1000, rng);
    x.col(1) = sample_noise(NoiseSpec::normal(), 1000, rng);
    const auto est = stein_score(x, {});
    const Vector s1 = est.s.col(0), x2 = x.col(1);
    const double corr =
        ((s1.array() - s1.mean()) * (x2.array() - x2.mean())).mean() /
        (std::sqrt((s1.array() - s1.mean()).square().mean()) *
         std::sqrt((x2.array() - x2.mean()).square().mean()));
    CHECK(std::abs(corr) <= 0.1);
}

TEST_CASE("stein_score error shrinks with sample size") {
    double mse_small = 0.0, mse_large = 0.0;
    for (std::uint64_t seed : {11, 12, 13}) {
        Rng ra(seed), rb(seed);
        const Vector xs = sample_noise(NoiseSpec::normal(), 200, ra);
        const Vector xl = sample_noise(NoiseSpec::normal(), 2000, rb);
        mse_small += central_mse_vs_gaussian(xs, stein_score(xs, {}).s.col(0));
        mse_large += central_mse_vs_gaussian(xl, stein_score(xl, {}).s.col(0));
    }
    CHECK(mse_large < mse_small);
}

TEST_CASE("stein_score translation equivariance at fixed bandwidth") {
    Rng rng(3);
    Matrix x(300, 2);
    x.col(0) = sample_noise(NoiseSpec::normal(), 300, rng);
    x.col(1) = sample_noise(NoiseSpec::laplace_unit_variance(), 300, rng);
    SteinConfig cfg;
    cfg.bandwidth = 1.0;
    const Matrix base = stein_score(x, cfg).s;

    Matrix shifted = x;
    shifted.col(0).array() += 5.0;
    shifted.col(1).array() -= 2.0;
    const Matrix moved = stein_score(shifted, cfg).s;
    CHECK((base - moved).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("stein_score scaling contract under the median heuristic") {
    Rng rng(4);
    const Vector x = sample_noise(NoiseSpec::normal(), 800, rng);
    const double c = 3.0;
    const Matrix s1 = stein_score(x, {}).s;
    const Matrix s2 = stein_score(c * x, {}).s;
    const double ratio = s2.norm() / s1.norm();
    CHECK(ratio == doctest::Approx(1.0 / c).epsilon(0.10));
}

TEST_CASE("stein_score rejects degenerate data") {
    Matrix x = Matrix::Zero(50, 1);  // all rows identical
    CHECK_THROWS_AS(stein_score(x, {}), NumericalError);
    CHECK_THROWS_AS(stein_score(Matrix::Random(1, 2), {}), std::invalid_argument);
    SteinConfig bad;
    bad.eta = 0.0;
    CHECK_THROWS_AS(stein_score(Matrix::Random(10, 2), bad), std::invalid_argument);
}

TEST_CASE("stein_jacobian_diag concentrates near the gaussian curvature") {
    Rng rng(2);
    const Vector x = sample_noise(NoiseSpec::normal(), 1000, rng);
    const Matrix jac = stein_jacobian_diag(x, {});
    const double mean = jac.col(0).mean();
    const double var = (jac.col(0).array() - mean).square().mean();
    CHECK(mean == doctest::Approx(-1.0).epsilon(0.1));  // -1/sigma^2
    CHECK(var <= 0.05);
}

TEST_CASE("stein_jacobian_diag separates the leaf on a gaussian chain") {
    const auto scm = AnalyticScm::chain3_gaussian();
    Rng rng(7);
    const auto gen = scm.generate(1000, rng);
    const Matrix jac = stein_jacobian_diag(gen.data, {});
    Vector var(3);
    for (int j = 0; j < 3; ++j) {
        const double m = jac.col(j).mean();
        var[j] = (jac.col(j).array() - m).square().mean();
    }
    CHECK(var[2] < var[0]);
    CHECK(var[2] < var[1]);
}

TEST_CASE("stein_jacobian_diag is invariant to row permutations") {
    Rng rng(9);
    Matrix x(200, 2);
    x.col(0) = sample_noise(NoiseSpec::normal(), 200, rng);
    x.col(1) = sample_noise(NoiseSpec::gumbel(), 200, rng);

    std::vector<int> perm(200);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix shuffled(200, 2);
    for (int i = 0; i < 200; ++i) shuffled.row(i) = x.row(perm[i]);

    const Matrix ja = stein_jacobian_diag(x, {});
    const Matrix jb = stein_jacobian_diag(shuffled, {});
    for (int j = 0; j < 2; ++j) {
        const double va = (ja.col(j).array() - ja.col(j).mean()).square().mean();
        const double vb = (jb.col(j).array() - jb.col(j).mean()).square().mean();
        CHECK(va == doctest::Approx(vb).epsilon(1e-9));
    }
}

TEST_SUITE_END();
