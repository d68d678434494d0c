#pragma once

#include "nogam/graph.hpp"
#include "nogam/types.hpp"

namespace nogam {

struct PruneConfig {
    double cutoff = 0.001;  // significance threshold, in (0,1)
    int basis_size = 10;    // interior spline knots per candidate parent

    void validate() const;
};

/// p-value of the nested-model F-test for every candidate edge admitted by
/// the ordering (full additive spline model vs model without that parent's
/// block). Entries not admitted by the ordering are 1.
Matrix prune_pvalues(const Matrix& x, const Ordering& order, const PruneConfig& cfg);

/// Keep edge iff its p-value < cfg.cutoff. Output is a subgraph of
/// full_dag_from_ordering(order), hence acyclic.
Dag prune(const Matrix& x, const Ordering& order, const PruneConfig& cfg);

}  // namespace nogam
