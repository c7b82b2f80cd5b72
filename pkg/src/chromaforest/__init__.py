"""Existence, construction and verification of (g, f)-chromatic spanning forests."""

__version__ = "0.1.0"

from .construction import (  # noqa: E402
    ColoredForest,
    ExchangeStep,
    Infeasible,
    InvariantViolation,
    build_f_spanning_forest,
    build_gf_spanning_forest,
    build_gg_forest,
    forest_violations,
)
from .distribution import (  # noqa: E402
    NotRepresentable,
    SimilarityBounds,
    build_similar_tree,
    color_distribution,
    exact_distribution_tree,
    similarity_bounds,
)
from .feasibility import (  # noqa: E402
    ColorBounds,
    FeasibilityVerdict,
    InstanceTooLargeError,
    PreconditionError,
    ViolationCertificate,
    check_f_spanning_forest,
    check_gf_spanning_forest,
    check_heterochromatic_spanning_tree,
    check_sufficient_condition,
)
from .graph import (  # noqa: E402
    EdgeColoredGraph,
    GraphError,
    color_histogram,
    component_count,
    max_edge_count,
    remove_colors,
)
from .oracle import (  # noqa: E402
    OracleBudgetError,
    brute_force_condition,
    brute_force_gf_exists,
    enumerate_spanning_forests,
)
from .partition_search import (  # noqa: E402
    Outcome,
    SearchReport,
    TreePartition,
    partition_similar_trees,
    random_complete_coloring,
    verify_partition,
)

__all__ = [
    "brute_force_condition",
    "brute_force_gf_exists",
    "build_f_spanning_forest",
    "build_gf_spanning_forest",
    "build_gg_forest",
    "build_similar_tree",
    "check_f_spanning_forest",
    "check_gf_spanning_forest",
    "check_heterochromatic_spanning_tree",
    "check_sufficient_condition",
    "color_distribution",
    "color_histogram",
    "ColorBounds",
    "ColoredForest",
    "component_count",
    "EdgeColoredGraph",
    "enumerate_spanning_forests",
    "exact_distribution_tree",
    "ExchangeStep",
    "FeasibilityVerdict",
    "forest_violations",
    "GraphError",
    "Infeasible",
    "InstanceTooLargeError",
    "InvariantViolation",
    "max_edge_count",
    "NotRepresentable",
    "OracleBudgetError",
    "Outcome",
    "partition_similar_trees",
    "PreconditionError",
    "random_complete_coloring",
    "remove_colors",
    "SearchReport",
    "similarity_bounds",
    "SimilarityBounds",
    "TreePartition",
    "verify_partition",
    "ViolationCertificate",
]
