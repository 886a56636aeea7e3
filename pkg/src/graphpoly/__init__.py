"""Exact Tutte and cover polynomials by subset-lattice transforms."""

from .cover import CoverTable, count_walks, cover_evaluate, cover_table, spanning_paths_cycles
from .errors import BudgetExceeded, CapacityError, ConsistencyError, GraphFormatError
from .graph import (
    Digraph,
    Multigraph,
    connected_components,
    count_connected_sets,
    induced_edge_count,
    parse_graph,
    spanning_tree_count,
)
from .potts import PottsInstance, Strategy, ZCoefficients, potts_value, z_coefficient_table
from .tutte import (
    TutteTable,
    chromatic_polynomial,
    consistency_check,
    evaluate,
    reliability,
    tutte_polynomial,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CapacityError",
    "ConsistencyError",
    "CoverTable",
    "Digraph",
    "GraphFormatError",
    "Multigraph",
    "PottsInstance",
    "Strategy",
    "TutteTable",
    "ZCoefficients",
    "chromatic_polynomial",
    "connected_components",
    "consistency_check",
    "count_connected_sets",
    "count_walks",
    "cover_evaluate",
    "cover_table",
    "evaluate",
    "induced_edge_count",
    "parse_graph",
    "potts_value",
    "reliability",
    "spanning_paths_cycles",
    "spanning_tree_count",
    "tutte_polynomial",
    "z_coefficient_table",
]
