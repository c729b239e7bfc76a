"""Fürer gadget graphs, twisting, and edge components after vertex separation.

Over a base graph F, the gadget for base vertex x has one vertex (x, X) per
even-size subset X of N_F(x).  X is stored as a bitmask over the sorted
neighbor list of x.  (x, X) ~ (y, Y) iff {x, y} is a base edge and
(x in Y) == (y in X); on twisted base edges the test is negated.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidInputError
from .graph import Graph


def _even_masks(deg: int) -> list:
    return [m for m in range(1 << deg) if bin(m).count("1") % 2 == 0]


@dataclass(frozen=True)
class FurerGraph:
    base: Graph
    vertices: tuple  # (x, mask) in sorted order
    graph: Graph
    twist_set: frozenset

    def index(self, x: int, mask: int) -> int:
        return self._index[(x, mask)]

    @property
    def _index(self) -> dict:
        cache = self.__dict__.get("_idx")
        if cache is None:
            cache = {v: i for i, v in enumerate(self.vertices)}
            object.__setattr__(self, "_idx", cache)
        return cache

    def meta(self, x: int) -> list:
        """Indices of the gadget vertices of base vertex x."""
        return [i for i, (y, _) in enumerate(self.vertices) if y == x]

    def members(self, i: int) -> frozenset:
        """The subset X of N_F(x) for gadget vertex i."""
        x, mask = self.vertices[i]
        nb = self.base.neighbors[x]
        return frozenset(nb[b] for b in range(len(nb)) if mask >> b & 1)

    def to_json(self) -> dict:
        return {
            "twist_set": [list(e) for e in sorted(self.twist_set)],
            "vertices": [
                {"id": i, "base": x, "subset": sorted(self.members(i))} for i, (x, _) in enumerate(self.vertices)
            ],
        }


def _check_base(base: Graph) -> None:
    if base.n < 2 or not base.is_connected():
        raise InvalidInputError("Fürer construction needs a connected base with at least 2 vertices")


def _norm_edges(base: Graph, s: Iterable) -> frozenset:
    out = set()
    for e in s:
        u, v = e
        e2 = (min(u, v), max(u, v))
        if e2 not in base.edges:
            raise InvalidInputError(f"{e} is not a base edge")
        out.add(e2)
    return frozenset(out)


def _build(base: Graph, twist_set: frozenset) -> FurerGraph:
    verts = [(x, m) for x in range(base.n) for m in _even_masks(base.degrees[x])]
    index = {v: i for i, v in enumerate(verts)}
    pos = [{y: b for b, y in enumerate(base.neighbors[x])} for x in range(base.n)]
    edges = []
    for x, y in base.edge_list:
        flip = (x, y) in twist_set
        bx, by = pos[x][y], pos[y][x]
        for mx in _even_masks(base.degrees[x]):
            y_in_x = bool(mx >> bx & 1)
            for my in _even_masks(base.degrees[y]):
                x_in_y = bool(my >> by & 1)
                if (x_in_y == y_in_x) != flip:
                    edges.append((index[(x, mx)], index[(y, my)]))
    return FurerGraph(base, tuple(verts), Graph(len(verts), frozenset(edges)), twist_set)


def furer(base: Graph) -> FurerGraph:
    _check_base(base)
    return _build(base, frozenset())


def twist(fg: FurerGraph, s: Iterable) -> FurerGraph:
    """Toggle every gadget-to-gadget edge over each base edge in s."""
    s = _norm_edges(fg.base, s)
    edges = set(fg.graph.edges)
    for x, y in s:
        for i in fg.meta(x):
            for j in fg.meta(y):
                edges ^= {(min(i, j), max(i, j))}
    return FurerGraph(fg.base, fg.vertices, Graph(fg.graph.n, frozenset(edges)), fg.twist_set ^ s)


def furer_twisted(base: Graph, s: Iterable) -> FurerGraph:
    """Fürer graph built directly with the flipped adjacency rule on s."""
    _check_base(base)
    return _build(base, _norm_edges(base, s))


def furer_pair(base: Graph) -> tuple[Graph, Graph]:
    """(G(F), H(F)) with H twisted on the lexicographically first base edge."""
    fg = furer(base)
    return fg.graph, twist(fg, [base.edge_list[0]]).graph


def furer_size(base: Graph) -> int:
    return sum(1 << (d - 1) if d else 1 for d in base.degrees)


def connected_components_after_separation(base: Graph, separators: Iterable[int]) -> list:
    """Group base edges: two edges are together if a path joins them through non-separator vertices.

    Returns frozensets of edges, ordered by their smallest edge.
    """
    sep = set(separators)
    for v in sep:
        if not 0 <= v < base.n:
            raise InvalidInputError(f"separator {v} is not a base vertex")
    edges = base.edge_list
    parent = list(range(len(edges)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    incident: dict = {}
    for i, (u, v) in enumerate(edges):
        incident.setdefault(u, []).append(i)
        incident.setdefault(v, []).append(i)
    for x, ids in incident.items():
        if x in sep:
            continue
        r = find(ids[0])
        for i in ids[1:]:
            parent[find(i)] = r
    groups: dict = {}
    for i, e in enumerate(edges):
        groups.setdefault(find(i), []).append(e)
    return sorted((frozenset(g) for g in groups.values()), key=min)
