#include "nogam/scm.hpp"

#include <doctest.h>

#include <cmath>

using namespace nogam;

namespace {

double sample_mean(const Vector& v) { return v.mean(); }

double sample_var(const Vector& v) {
    return (v.array() - v.mean()).square().sum() / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST_SUITE_BEGIN("scm");

TEST_CASE("sample_noise moments") {
    Rng rng(1);
    const int n = 100000;

    const Vector u = sample_noise(NoiseSpec::uniform(0.0, 5.0, false), n, rng);
    const double sigma_mean_u = std::sqrt(25.0 / 12.0 / n);
    CHECK(std::abs(sample_mean(u) - 2.5) <= 3.0 * sigma_mean_u);

    const Vector b = sample_noise(NoiseSpec::beta(2.0, 2.0), n, rng);
    const double sigma_mean_b = std::sqrt(0.05 / n);
    CHECK(std::abs(sample_mean(b)) <= 3.0 * sigma_mean_b);

    const Vector e = sample_noise(NoiseSpec::exponential(1.0), n, rng);
    CHECK(sample_var(e) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("sample_noise centering across all families") {
    const int n = 100000;
    int fam_idx = 0;
    for (auto family : {NoiseFamily::Normal, NoiseFamily::Beta, NoiseFamily::Exponential,
                        NoiseFamily::Gamma, NoiseFamily::Gumbel, NoiseFamily::Laplace,
                        NoiseFamily::Uniform}) {
        Rng rng(100 + fam_idx++);
        const NoiseSpec spec = NoiseSpec::default_for(family);
        const Vector v = sample_noise(spec, n, rng);
        CHECK(std::abs(sample_mean(v)) <= 4.0 * std::sqrt(spec.variance() / n));
        CHECK(sample_var(v) == doctest::Approx(spec.variance()).epsilon(0.05));
    }
}

TEST_CASE("sample_noise invalid parameters") {
    Rng rng(0);
    CHECK_THROWS_AS(sample_noise(NoiseSpec::normal(-1.0), 10, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_noise(NoiseSpec::exponential(0.0), 10, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_noise(NoiseSpec::uniform(2.0, 2.0), 10, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_noise(NoiseSpec::normal(), 0, rng), std::invalid_argument);
}

TEST_CASE("gp mechanism basic draws") {
    Rng rng(3);
    // 1x1 Gram: a standard normal draw up to jitter
    const int reps = 4000;
    double acc = 0.0, acc2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        Matrix one(1, 1);
        one(0, 0) = 0.7;
        const double f = sample_gp_mechanism(one, 1.0, rng)[0];
        acc += f;
        acc2 += f * f;
    }
    CHECK(std::abs(acc / reps) < 0.06);
    CHECK(acc2 / reps == doctest::Approx(1.0).epsilon(0.08));

    // duplicated input rows give equal outputs up to jitter
    Matrix dup(2, 1);
    dup << 1.3, 1.3;
    const Vector f = sample_gp_mechanism(dup, 1.0, rng);
    CHECK(std::abs(f[0] - f[1]) < 1e-2);

    Matrix bad(1, 1);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(sample_gp_mechanism(bad, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_gp_mechanism(dup, 0.0, rng), std::invalid_argument);
}

TEST_CASE("gp mechanism covariance matches the Gram matrix") {
    Matrix pts(3, 1);
    pts << 0.0, 0.8, 2.0;
    Matrix k(3, 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            k(a, b) = std::exp(-(pts(a, 0) - pts(b, 0)) * (pts(a, 0) - pts(b, 0)) / 2.0);

    Rng rng(17);
    const int reps = 5000;
    Matrix draws(reps, 3);
    for (int r = 0; r < reps; ++r) draws.row(r) = sample_gp_mechanism(pts, 1.0, rng).transpose();

    Matrix centered = draws.rowwise() - draws.colwise().mean();
    Matrix cov = centered.transpose() * centered / static_cast<double>(reps - 1);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            CHECK(cov(a, b) == doctest::Approx(k(a, b)).epsilon(0.10));
}

TEST_CASE("generate_dataset structure and determinism") {
    // edgeless graph: data equals noise exactly
    {
        Rng rng(5);
        const auto spec = ScmSpec::gp_anm(Dag(4), NoiseSpec::gumbel());
        const auto out = generate_dataset(spec, 200, rng);
        CHECK((out.data - out.noise).cwiseAbs().maxCoeff() == 0.0);
    }

    // chain with a GP mechanism: mechanism values are a deterministic
    // function of the seed, and uncorrelated with the noise realization
    Dag chain(2);
    chain.add_edge(0, 1);
    const auto spec = ScmSpec::gp_anm(chain, NoiseSpec::normal());
    Rng r1(9), r2(9);
    const auto a = generate_dataset(spec, 500, r1);
    const auto b = generate_dataset(spec, 500, r2);
    CHECK((a.data.array() == b.data.array()).all());  // bit-identical on the same seed
    CHECK((a.noise.array() == b.noise.array()).all());

    const Vector mech = a.data.col(1) - a.noise.col(1);
    const Vector nz = a.noise.col(1);
    const double corr =
        ((mech.array() - mech.mean()) * (nz.array() - nz.mean())).mean() /
        (std::sqrt((mech.array() - mech.mean()).square().mean()) *
         std::sqrt((nz.array() - nz.mean()).square().mean()));
    CHECK(std::abs(corr) < 0.1);
}

TEST_CASE("analytic_score single gaussian node") {
    AnalyticScm scm;
    scm.graph = Dag(1);
    AnalyticNode node;
    const double var = 4.0;
    node.noise = NoiseSpec::normal(2.0);
    node.log_density = [](double nz) { return -nz * nz / 8.0; };
    node.log_density_deriv = [](double nz) { return -nz / 4.0; };
    scm.nodes.push_back(node);

    Matrix x(3, 1);
    x << -1.0, 0.5, 3.0;
    const auto est = analytic_score(scm, x);
    for (int i = 0; i < 3; ++i) CHECK(est.s(i, 0) == doctest::Approx(-x(i, 0) / var));
}

TEST_CASE("analytic_score leaf entry equals g' at the realized noise") {
    const auto scm = AnalyticScm::bivariate_cubic_gaussian();
    Rng rng(21);
    const auto gen = scm.generate(800, rng);
    const auto est = analytic_score(scm, gen.data);
    for (int i = 0; i < 800; ++i)
        CHECK(est.s(i, 1) == doctest::Approx(-gen.noise(i, 1)).epsilon(1e-12));
}

TEST_CASE("analytic_score matches the jointly-gaussian closed form") {
    // linear-gaussian SCM: x1 = a x0 + n1; score is -Sigma^{-1} x
    const double a = 1.7, s0 = 1.3, s1 = 0.6;
    AnalyticScm scm;
    scm.graph = Dag(2);
    scm.graph.add_edge(0, 1);
    for (double sd : {s0, s1}) {
        AnalyticNode node;
        node.noise = NoiseSpec::normal(sd);
        const double var = sd * sd;
        node.log_density = [var](double nz) { return -0.5 * nz * nz / var; };
        node.log_density_deriv = [var](double nz) { return -nz / var; };
        scm.nodes.push_back(node);
    }
    scm.nodes[1].mech = [a](const std::vector<double>& u) { return a * u[0]; };
    scm.nodes[1].mech_partial = {[a](const std::vector<double>&) { return a; }};

    Matrix sigma(2, 2);
    sigma << s0 * s0, a * s0 * s0, a * s0 * s0, a * a * s0 * s0 + s1 * s1;
    const Matrix precision = sigma.inverse();

    Rng rng(33);
    const auto gen = scm.generate(20, rng);
    const auto est = analytic_score(scm, gen.data);
    const Matrix expected = -(gen.data * precision);
    CHECK((est.s - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("analytic_score agrees with finite differences of the joint log-density") {
    for (const auto& scm : {AnalyticScm::bivariate_cubic_gaussian(),
                            AnalyticScm::chain3_gaussian()}) {
        Rng rng(55);
        const auto gen = scm.generate(30, rng);
        const auto est = analytic_score(scm, gen.data);
        const double h = 1e-5;
        for (int r = 0; r < 30; ++r) {
            Vector x = gen.data.row(r);
            for (int i = 0; i < scm.graph.node_count(); ++i) {
                Vector hi = x, lo = x;
                hi[i] += h;
                lo[i] -= h;
                const double fd =
                    (scm.joint_log_density(hi) - scm.joint_log_density(lo)) / (2.0 * h);
                CHECK(std::abs(est.s(r, i) - fd) <= 1e-5 * (1.0 + std::abs(fd)));
            }
        }
    }
}

TEST_CASE("noise analytic entropies match known closed forms") {
    CHECK(NoiseSpec::uniform(0.0, 5.0, false).analytic_entropy() ==
          doctest::Approx(std::log(5.0)));
    CHECK(NoiseSpec::normal(1.0).analytic_entropy() == doctest::Approx(1.4189385332));
    CHECK(NoiseSpec::exponential(1.0).analytic_entropy() == doctest::Approx(1.0));
    CHECK(NoiseSpec::laplace_unit_variance().analytic_entropy() ==
          doctest::Approx(1.0 + 0.5 * std::log(2.0)));
}

TEST_SUITE_END();
