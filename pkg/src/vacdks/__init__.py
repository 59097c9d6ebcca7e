"""Vertex-attribute-constrained densest k-subgraph solver toolkit."""

from .baselines import brute_force, greedy_peel, lrbo_rank1
from .constraints import (
    ConstraintError,
    ConstraintSpec,
    check_fractional,
    init_uniform,
    is_feasible_binary,
    is_feasible_fractional,
    lmo,
    round_to_integral,
    validate,
)
from .fw import FwConfig, FwTrace, lipschitz_estimate, objective_g, solve_fw
from .graph import (
    AttributeAssignment,
    GraphFormatError,
    PlantedCliqueConfig,
    WeightedGraph,
    generate_planted_clique,
    induced_weight,
    load_attributes,
    load_edge_list,
    save_attributes,
    save_edge_list,
)
from .metrics import (
    BoundReport,
    group_proportions,
    normalized_edge_weight,
    recovery_check,
    upper_bound,
)

__all__ = [
    "AttributeAssignment",
    "BoundReport",
    "ConstraintError",
    "ConstraintSpec",
    "FwConfig",
    "FwTrace",
    "GraphFormatError",
    "PlantedCliqueConfig",
    "WeightedGraph",
    "brute_force",
    "check_fractional",
    "generate_planted_clique",
    "greedy_peel",
    "group_proportions",
    "induced_weight",
    "init_uniform",
    "is_feasible_binary",
    "is_feasible_fractional",
    "lipschitz_estimate",
    "lmo",
    "load_attributes",
    "load_edge_list",
    "lrbo_rank1",
    "normalized_edge_weight",
    "objective_g",
    "recovery_check",
    "round_to_integral",
    "save_attributes",
    "save_edge_list",
    "solve_fw",
    "upper_bound",
    "validate",
]
