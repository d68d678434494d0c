"""Score-based causal discovery for additive noise models.

The heavy lifting lives in the compiled ``_nogam`` extension; this package
re-exports its surface. See ``help(nogam._nogam)`` for the full signatures.
"""

from ._nogam import (
    d_top,
    direction_test,
    discover,
    entropy_estimate,
    estimate_residuals,
    full_dag_from_ordering,
    gaussian_entropy,
    generate_dataset,
    is_consistent_ordering,
    leaf_mse_scores,
    nogam_order,
    prune,
    run_example1,
    sample_er,
    sample_sf,
    score_order,
    shd,
    sid,
    stein_jacobian_diag,
    stein_score,
    topological_sort,
)

__all__ = [
    "d_top",
    "direction_test",
    "discover",
    "entropy_estimate",
    "estimate_residuals",
    "full_dag_from_ordering",
    "gaussian_entropy",
    "generate_dataset",
    "is_consistent_ordering",
    "leaf_mse_scores",
    "nogam_order",
    "prune",
    "run_example1",
    "sample_er",
    "sample_sf",
    "score_order",
    "shd",
    "sid",
    "stein_jacobian_diag",
    "stein_score",
    "topological_sort",
]
