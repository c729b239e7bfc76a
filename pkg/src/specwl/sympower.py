"""Symmetric k-th powers and the local-refinement encoding check.

The symmetric k-th power of G has one vertex per k-subset of V(G); two
subsets are adjacent when their symmetric difference is an edge of G.
Subsets are numbered by colexicographic rank.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import InvalidInputError, check_cap
from .graph import Graph
from .refine import compare_graphs


def colex_rank(subset) -> int:
    return sum(math.comb(x, i + 1) for i, x in enumerate(sorted(subset)))


def colex_subsets(n: int, k: int) -> list:
    """All k-subsets of range(n) in colex order."""
    return sorted(itertools.combinations(range(n), k), key=lambda s: tuple(reversed(s)))


@dataclass(frozen=True)
class SymmetricPower:
    source: Graph
    k: int
    subsets: tuple  # vertex id -> sorted k-subset
    graph: Graph

    def vertex_index(self) -> dict:
        return {s: i for i, s in enumerate(self.subsets)}

    def to_json(self) -> dict:
        return {"k": self.k, "vertex_index": [list(s) for s in self.subsets]}


def symmetric_power(g: Graph, k: int) -> SymmetricPower:
    if not 1 <= k <= max(g.n, 1):
        raise InvalidInputError("need 1 <= k <= n")
    check_cap("sympower", math.comb(g.n, k))
    subsets = colex_subsets(g.n, k)
    edges = set()
    for i, s in enumerate(subsets):
        members = set(s)
        for u in s:
            for w in g.adj[u]:
                if w in members:
                    continue
                j = colex_rank((members - {u}) | {w})
                if i < j:
                    edges.add((i, j))
    return SymmetricPower(g, k, tuple(subsets), Graph(len(subsets), frozenset(edges)))


@dataclass(frozen=True)
class EncodingReport:
    k: int
    local_indistinguishable: bool
    spectral_indistinguishable: bool

    @property
    def holds(self) -> bool:
        """Local agreement on (g, h) must imply spectral agreement on their powers."""
        return self.spectral_indistinguishable or not self.local_indistinguishable

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "local_indistinguishable": self.local_indistinguishable,
            "spectral_indistinguishable_on_powers": self.spectral_indistinguishable,
            "implication_holds": self.holds,
        }


def sympower_encoding_check(g: Graph, h: Graph, k: int) -> EncodingReport:
    """Run local refinement of order 2k on (g, h) and spectral refinement on their k-th powers."""
    if k not in (1, 2):
        raise InvalidInputError("encoding check supports k in {1, 2}")
    local = compare_graphs(g, h, f"local{2 * k}")
    spec = compare_graphs(symmetric_power(g, k).graph, symmetric_power(h, k).graph, "spec")
    return EncodingReport(k, not local.distinguished, not spec.distinguished)
