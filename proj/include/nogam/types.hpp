#pragma once

#include <Eigen/Dense>

#include <random>
#include <stdexcept>
#include <string>

namespace nogam {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Per-sample score estimates: s(k,i) ~ d/dx_i log p(x) at sample k.
/// jac_diag, when non-empty, holds estimates of d/dx_i s_i at each sample.
struct ScoreEstimate {
    Matrix s;
    Matrix jac_diag;  // empty unless a second-order estimate was requested
};

struct CycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace nogam
