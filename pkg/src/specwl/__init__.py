"""Spectral color refinement, its comparison algorithms, and the homomorphism-counting tools that characterize them."""
from __future__ import annotations

from .errors import (
    AdjacentBlockError,
    CapExceededError,
    EigensolverError,
    GraphFormatError,
    InvalidInputError,
    SpecWLError,
)
from .furer import FurerGraph, connected_components_after_separation, furer, furer_pair, twist
from .graph import Graph, are_isomorphic, from_edges, make_family, parse_family, parse_graph, quotient
from .homcount import (
    counting_power_check,
    hom_brute,
    hom_count,
    hom_tw2,
    spasm,
    sub_brute,
    sub_via_hom,
)
from .pebble import solve_simplified_game
from .ptree import enumerate_parallel_trees, find_skeleton, is_parallel_edge, parallel_tree_depth
from .refine import (
    STABLE,
    compare_graphs,
    korder_refine,
    spectral_refine,
    spectral_refine_float,
)
from .sympower import symmetric_power, sympower_encoding_check
from .wl import fwl2, local_k, refine, subgraph_gnn, wl1

__version__ = "0.1.0"
