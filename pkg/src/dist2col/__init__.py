"""2-distance coloring of plane graphs: exact search, reducible configurations,
constructive (delta + 4)-coloring and discharging."""

from .coloring import Coloring, brute_force_chi2, constructive_color, exact_chi2, is_valid
from .discharging import apply_ruleset, final_report, init_charges
from .graph_core import PlanarGraph, build_graph, delete_vertex, girth, square_graph
from .structure import classify_vertex, find_reducible

__all__ = [
    "Coloring", "PlanarGraph", "apply_ruleset", "brute_force_chi2", "build_graph",
    "classify_vertex", "constructive_color", "delete_vertex", "exact_chi2", "final_report",
    "find_reducible", "girth", "init_charges", "is_valid", "square_graph",
]
