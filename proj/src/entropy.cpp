#include "nogam/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace nogam {

double entropy_estimate(const Vector& samples) {
    const int n = static_cast<int>(samples.size());
    require(n >= 10, "entropy_estimate: need at least 10 samples");

    std::vector<double> x(samples.data(), samples.data() + n);
    std::sort(x.begin(), x.end());
    if (x.back() - x.front() <= 0.0)
        throw DegenerateDataError("entropy_estimate: degenerate (constant) sample");

    const int m = static_cast<int>(std::sqrt(static_cast<double>(n)));
    // ties produce zero spacings; floor them at a scale-relative epsilon
    const double floor_gap = 1e-12 * (x.back() - x.front());

    double sum = 0.0;
    for (int i = 1; i <= n; ++i) {
        const int lo = std::max(i - m, 1), hi = std::min(i + m, n);
        const double gap = std::max(x[hi - 1] - x[lo - 1], floor_gap);
        // boundary-corrected spacing coefficient (interior = 2)
        double c = 2.0;
        if (i <= m)
            c = 1.0 + static_cast<double>(i - 1) / m;
        else if (i >= n - m + 1)
            c = 1.0 + static_cast<double>(n - i) / m;
        sum += std::log(gap * n / (c * m));
    }
    return sum / n;
}

double gaussian_entropy(double variance) {
    require(variance > 0.0, "gaussian_entropy: variance must be positive");
    return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * variance);
}

namespace {

double sample_variance(const Vector& v) {
    const double mean = v.mean();
    return (v.array() - mean).square().sum() / static_cast<double>(v.size() - 1);
}

double entropy_of(const Vector& v, EntropyMode mode) {
    return mode == EntropyMode::Nonparametric ? entropy_estimate(v)
                                              : gaussian_entropy(sample_variance(v));
}

}  // namespace

DirectionVerdict direction_test(const Vector& x, const Vector& y, EntropyMode mode,
                                const RegressorConfig& reg_cfg) {
    require(x.size() == y.size(), "direction_test: size mismatch");
    require(x.size() >= 50, "direction_test: need at least 50 samples");

    const Vector fwd_residual = y - oof_predict(x, y, reg_cfg);
    const Vector rev_residual = x - oof_predict(y, x, reg_cfg);

    DirectionVerdict v;
    v.mode = mode;
    v.total_entropy_forward = entropy_of(x, mode) + entropy_of(fwd_residual, mode);
    v.total_entropy_reverse = entropy_of(y, mode) + entropy_of(rev_residual, mode);
    v.tie = v.total_entropy_forward == v.total_entropy_reverse;
    v.direction = v.total_entropy_forward <= v.total_entropy_reverse ? Direction::Forward
                                                                     : Direction::Reverse;
    return v;
}

}  // namespace nogam
