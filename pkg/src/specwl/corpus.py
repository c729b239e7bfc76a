"""Graph corpora used by the acceptance suite: atlas slices, seeded random graphs, named witnesses."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .furer import furer_pair
from .graph import Graph, disjoint_union, encode_graph6, from_edges, make_family

DEFAULT_SEED = 20240617


@lru_cache(maxsize=None)
def _atlas() -> tuple:
    from networkx.generators.atlas import graph_atlas_g

    return tuple(from_edges(a.number_of_nodes(), a.edges()) for a in graph_atlas_g())


def atlas(min_n: int = 1, max_n: int = 7, connected: bool | None = None) -> list:
    """Every graph on min_n..max_n vertices (up to 7), one per isomorphism class, in atlas order."""
    out = []
    for g in _atlas():
        if not min_n <= g.n <= max_n:
            continue
        if connected is not None and g.is_connected() != connected:
            continue
        out.append(g)
    return out


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    iu = np.triu_indices(n, 1)
    keep = rng.random(len(iu[0])) < p
    return from_edges(n, zip(iu[0][keep].tolist(), iu[1][keep].tolist()))


def random_connected(rng: np.random.Generator, n: int, p: float = 0.3) -> Graph:
    """Random recursive tree plus independent extra edges."""
    edges = {(int(rng.integers(0, v)), v) for v in range(1, n)}
    g = random_graph(rng, n, p)
    return from_edges(n, edges | g.edges)


def random_relabel(rng: np.random.Generator, g: Graph) -> Graph:
    return g.relabel(rng.permutation(g.n).tolist())


def random_same_size(rng: np.random.Generator, g: Graph) -> Graph:
    """Uniform graph with the same vertex and edge counts as g."""
    iu = np.triu_indices(g.n, 1)
    pick = rng.choice(len(iu[0]), size=g.m, replace=False)
    return from_edges(g.n, zip(iu[0][pick].tolist(), iu[1][pick].tolist()))


# ---------------------------------------------------------------- witnesses

def fwl2_only_base() -> Graph:
    """Diamond with a pendant at a degree-3 vertex: width 2, yet not a parallel tree."""
    return from_edges(5, [(0, 1), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


def subgraph_only_base() -> Graph:
    """Fan (hub over a 4-path): deleting the hub leaves a forest."""
    return make_family("fan", [4])


def spec_only_base() -> Graph:
    """Two triangles joined by an edge: depth 2, and no vertex deletion leaves a forest."""
    return make_family("dumbbell", [3, 3])


def cospectral_example() -> tuple[Graph, Graph]:
    """4-cycle plus isolated vertex against the 4-leaf star."""
    return disjoint_union(make_family("cycle", [4]), Graph(1)), make_family("star", [4])


# ---------------------------------------------------------------- catalog

@dataclass(frozen=True)
class Pair:
    pair_id: str
    g: Graph
    h: Graph


def furer_case(name: str, base: Graph) -> Pair:
    g, h = furer_pair(base)
    return Pair(f"furer:{name}", g, h)


def hierarchy_catalog(seed: int = DEFAULT_SEED) -> list:
    """Graph pairs over which the comparison algorithms are checked against each other.

    Fürer pairs of every connected base with 2 to 5 vertices stay within the
    40-vertex pair-refinement cap.
    """
    rng = np.random.default_rng(seed)
    pairs = []
    for base in atlas(2, 5, connected=True):
        pairs.append(furer_case(encode_graph6(base), base))
    pairs.append(furer_case("fan4", subgraph_only_base()))
    pairs.append(furer_case("dumbbell3-3", spec_only_base()))
    pairs.append(furer_case("doubled_path1", make_family("doubled_path", [1])))
    pairs.append(Pair("c6-vs-2c3", make_family("cycle", [6]),
                      disjoint_union(make_family("cycle", [3]), make_family("cycle", [3]))))
    pairs.append(Pair("c4k1-vs-star4", *cospectral_example()))
    pairs.append(Pair("p3-vs-k3", make_family("path", [3]), make_family("clique", [3])))
    pairs.append(Pair("p4-vs-star3", make_family("path", [4]), make_family("star", [3])))
    for i in range(6):
        g = random_connected(rng, int(rng.integers(5, 11)))
        pairs.append(Pair(f"iso{i}", g, random_relabel(rng, g)))
    for i in range(8):
        g = random_connected(rng, int(rng.integers(5, 11)))
        pairs.append(Pair(f"random{i}", g, random_same_size(rng, g)))
    return pairs
