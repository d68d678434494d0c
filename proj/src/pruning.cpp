#include "nogam/pruning.hpp"

#include <boost/math/distributions/fisher_f.hpp>

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <vector>

namespace nogam {

void PruneConfig::validate() const {
    require(cutoff > 0.0 && cutoff < 1.0, "PruneConfig: cutoff must be in (0,1)");
    require(basis_size >= 3, "PruneConfig: basis_size must be >= 3");
}

namespace {

constexpr int kDegree = 3;  // cubic B-splines

/// Clamped knot vector: degree+1 copies of the boundaries, interior knots at
/// empirical quantiles of the column.
std::vector<double> make_knots(const Vector& col, int interior) {
    std::vector<double> sorted(col.data(), col.data() + col.size());
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front(), hi = sorted.back();

    std::vector<double> knots;
    knots.reserve(interior + 2 * (kDegree + 1));
    for (int r = 0; r <= kDegree; ++r) knots.push_back(lo);
    const auto n = sorted.size();
    for (int q = 1; q <= interior; ++q) {
        const double frac = static_cast<double>(q) / (interior + 1);
        const double pos = frac * (n - 1);
        const auto base = static_cast<size_t>(pos);
        const double t = pos - base;
        const double value =
            base + 1 < n ? (1.0 - t) * sorted[base] + t * sorted[base + 1] : sorted[base];
        knots.push_back(value);
    }
    for (int r = 0; r <= kDegree; ++r) knots.push_back(hi);
    return knots;
}

/// Cox-de Boor evaluation of all basis functions at x, 0/0 := 0 convention.
/// x is clamped to the knot range; the right boundary is assigned to the
/// last non-empty interval so the basis still sums to one there.
void eval_basis(const std::vector<double>& knots, double x, std::vector<double>& b) {
    const int n_knots = static_cast<int>(knots.size());
    x = std::clamp(x, knots.front(), knots.back());

    std::vector<double> level(n_knots - 1, 0.0);
    if (x >= knots.back()) {
        for (int i = n_knots - 2; i >= 0; --i) {
            if (knots[i] < knots[i + 1]) {
                level[i] = 1.0;
                break;
            }
        }
    } else {
        for (int i = 0; i < n_knots - 1; ++i) {
            if (x >= knots[i] && x < knots[i + 1]) {
                level[i] = 1.0;
                break;
            }
        }
    }

    for (int deg = 1; deg <= kDegree; ++deg) {
        std::vector<double> next(level.size() - 1, 0.0);
        for (size_t i = 0; i + 1 < level.size(); ++i) {
            double value = 0.0;
            const double den1 = knots[i + deg] - knots[i];
            if (den1 > 0.0) value += (x - knots[i]) / den1 * level[i];
            const double den2 = knots[i + deg + 1] - knots[i + 1];
            if (den2 > 0.0) value += (knots[i + deg + 1] - x) / den2 * level[i + 1];
            next[i] = value;
        }
        level.swap(next);
    }
    b = std::move(level);
}

/// Spline expansion of one column; the first basis function is dropped so
/// the block stays identifiable next to the model intercept (the full basis
/// sums to one).
Matrix spline_block(const Vector& col, int interior) {
    const auto knots = make_knots(col, interior);
    const int n_basis = static_cast<int>(knots.size()) - kDegree - 1;
    Matrix block(col.size(), n_basis - 1);
    std::vector<double> b;
    for (Eigen::Index r = 0; r < col.size(); ++r) {
        eval_basis(knots, col[r], b);
        for (int c = 1; c < n_basis; ++c) block(r, c - 1) = b[c];
    }
    return block;
}

struct LeastSquaresFit {
    double rss = 0.0;
    int rank = 0;
};

LeastSquaresFit solve_rss(const Matrix& design, const Vector& y) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(design);
    const Vector coef = cod.solve(y);
    LeastSquaresFit fit;
    fit.rank = static_cast<int>(cod.rank());
    fit.rss = (y - design * coef).squaredNorm();
    return fit;
}

Matrix assemble_design(const std::vector<Matrix>& blocks, int skip, Eigen::Index n) {
    Eigen::Index cols = 1;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
        if (b != skip) cols += blocks[b].cols();
    Matrix design(n, cols);
    design.col(0).setOnes();
    Eigen::Index at = 1;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        if (b == skip) continue;
        design.middleCols(at, blocks[b].cols()) = blocks[b];
        at += blocks[b].cols();
    }
    return design;
}

}  // namespace

Matrix prune_pvalues(const Matrix& x, const Ordering& order, const PruneConfig& cfg) {
    cfg.validate();
    const auto n = x.rows();
    const int d = static_cast<int>(x.cols());
    require(order.size() == d, "prune: ordering does not match data columns");
    require(order.is_valid_permutation(), "prune: ordering is not a permutation");

    Matrix pvals = Matrix::Ones(d, d);
    bool warned_rank = false;

    for (int pos = 1; pos < d; ++pos) {
        const int v = order.perm[pos];
        const Vector y = x.col(v);

        std::vector<int> candidates(order.perm.begin(), order.perm.begin() + pos);
        std::vector<Matrix> blocks;
        blocks.reserve(candidates.size());
        for (int p : candidates) blocks.push_back(spline_block(x.col(p), cfg.basis_size));

        const Matrix full = assemble_design(blocks, -1, n);
        const auto full_fit = solve_rss(full, y);
        if (!warned_rank && full_fit.rank < full.cols()) {
            std::cerr << "prune: rank-deficient spline design, dropping dependent columns\n";
            warned_rank = true;
        }
        const double df_resid = static_cast<double>(n) - full_fit.rank;
        if (df_resid <= 0.0) {
            // saturated model: no residual dof, nothing can be tested
            continue;
        }

        for (size_t b = 0; b < candidates.size(); ++b) {
            const Matrix reduced = assemble_design(blocks, static_cast<int>(b), n);
            const auto red_fit = solve_rss(reduced, y);
            const int q = full_fit.rank - red_fit.rank;
            const double rss_gain = std::max(0.0, red_fit.rss - full_fit.rss);
            double pval = 1.0;
            if (q > 0) {
                if (full_fit.rss <= 1e-300) {
                    pval = rss_gain > 0.0 ? 0.0 : 1.0;
                } else {
                    const double f_stat = (rss_gain / q) / (full_fit.rss / df_resid);
                    const boost::math::fisher_f dist(q, df_resid);
                    pval = boost::math::cdf(boost::math::complement(dist, f_stat));
                }
            }
            pvals(candidates[b], v) = pval;
        }
    }
    return pvals;
}

Dag prune(const Matrix& x, const Ordering& order, const PruneConfig& cfg) {
    const Matrix pvals = prune_pvalues(x, order, cfg);
    const int d = static_cast<int>(x.cols());
    Dag g(d);
    const auto pos = order.positions();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j && pos[i] < pos[j] && pvals(i, j) < cfg.cutoff) g.add_edge(i, j);
    return g;
}

}  // namespace nogam
