#pragma once

#include "nogam/regression.hpp"
#include "nogam/types.hpp"

namespace nogam {

enum class EntropyMode { Nonparametric, GaussianAssumption };
enum class Direction { Forward, Reverse };

struct DirectionVerdict {
    Direction direction = Direction::Forward;
    double total_entropy_forward = 0.0;
    double total_entropy_reverse = 0.0;
    EntropyMode mode = EntropyMode::Nonparametric;
    bool tie = false;  // strict tie resolved to Forward
};

/// Nonparametric differential entropy in nats, m-spacing (Vasicek) estimator
/// with m = floor(sqrt(n)) and boundary-corrected spacing coefficients.
/// Requires n >= 10 and a nondegenerate sample.
double entropy_estimate(const Vector& samples);

/// 0.5 * ln(2 pi e variance).
double gaussian_entropy(double variance);

/// Bivariate direction test by total residual entropy: fits y on x and x on
/// y (out-of-fold), compares H(cause) + H(residual) under the two candidate
/// directions. GaussianAssumption replaces H by the Gaussian entropy of the
/// sample variance.
DirectionVerdict direction_test(const Vector& x, const Vector& y, EntropyMode mode,
                                const RegressorConfig& reg_cfg);

}  // namespace nogam
