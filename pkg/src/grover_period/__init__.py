"""Exact periodicity analysis of Grover walks on graphs and generalized Bethe trees."""
from .graph_core import BetheSpec, Graph, bethe_graph, load_edge_list, subdivide_spec
from .grover_walk import build_grover, bruteforce_period
from .periodicity import classify_bethe, spectral_period_bethe, spectral_period_graph, verify_agreement

__all__ = [
    "BetheSpec",
    "Graph",
    "bethe_graph",
    "load_edge_list",
    "subdivide_spec",
    "build_grover",
    "bruteforce_period",
    "classify_bethe",
    "spectral_period_bethe",
    "spectral_period_graph",
    "verify_agreement",
]
