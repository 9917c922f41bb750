"""Graph bisection toolkit.

Large bisections via greedy pair-splitting over free-vertex-maximized
matchings, judicious bisections via paired-variance and star-decomposition
randomized schemes, minimum-degree pipelines, coloring-based bisections,
and the brute-force oracles and extremal generators that certify them.
"""
from .core import (
    Bipartition,
    CutStats,
    Graph,
    GraphParseError,
    RebalanceError,
    cut_stats,
    is_bisection,
    parse_graph,
    rebalance_low_degree,
)
from .matching import (
    FreeInfo,
    Matching,
    compute_free_info,
    count_nonfree,
    maximize_free_vertices,
    maximum_matching,
)

__all__ = [
    "Bipartition",
    "CutStats",
    "Graph",
    "GraphParseError",
    "RebalanceError",
    "cut_stats",
    "is_bisection",
    "parse_graph",
    "rebalance_low_degree",
    "FreeInfo",
    "Matching",
    "compute_free_info",
    "count_nonfree",
    "maximize_free_vertices",
    "maximum_matching",
]

__version__ = "0.1.0"
