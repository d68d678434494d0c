#pragma once

#include "nogam/types.hpp"

namespace nogam::detail {

/// All pairwise squared euclidean distances between rows of a and rows of b
/// (a: m x k, b: t x k -> m x t). Negative round-off is clamped to zero.
inline Matrix pairwise_sq_dists(const Matrix& a, const Matrix& b) {
    Vector na = a.rowwise().squaredNorm();
    Vector nb = b.rowwise().squaredNorm();
    Matrix d = na.replicate(1, b.rows()) + nb.transpose().replicate(a.rows(), 1) -
               2.0 * (a * b.transpose());
    return d.cwiseMax(0.0);
}

inline Matrix pairwise_sq_dists(const Matrix& a) { return pairwise_sq_dists(a, a); }

}  // namespace nogam::detail
