"""Parallel edges, parallel trees and their depth.

A parallel edge is a graph whose edges split into internally disjoint simple
paths between two fixed endpoints.  A parallel tree is built from a tree T by
replacing every tree edge with a parallel edge; its depth is the smallest
rooted depth of such a T.

Recognition is exact.  Every vertex of degree other than 2 must be a skeleton
node, and the remaining degree-2 vertices sit on maximal chains between
nodes.  A chain that returns to its start needs exactly one extra node (two
or more would close a cycle in T).  Subdividing any other chain never lowers
the radius of T, so the skeleton is forced up to those choices and the depth
is the radius of the resulting tree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidInputError, check_cap
from .graph import Graph, dedupe_isomorphic, from_edges


@dataclass(frozen=True)
class Skeleton:
    tree: Graph  # over node ids 0..k-1
    root: int
    beta: tuple  # node id -> base vertex
    gamma: dict  # (i, j) with i < j -> tuple of paths from beta[i] to beta[j]

    @property
    def depth(self) -> int:
        return _eccentricity(self.tree, self.root)

    def to_json(self) -> dict:
        return {
            "nodes": list(range(self.tree.n)),
            "root": self.root,
            "depth": self.depth,
            "beta": {str(i): b for i, b in enumerate(self.beta)},
            "tree_edges": [list(e) for e in self.tree.edge_list],
            "gamma": {f"{i}-{j}": [list(p) for p in paths] for (i, j), paths in sorted(self.gamma.items())},
        }


def _eccentricity(t: Graph, root: int) -> int:
    dist = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for x in frontier:
            for y in t.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return max(dist.values())


def verify_skeleton(g: Graph, sk: Skeleton) -> bool:
    """Direct check of the skeleton conditions against g."""
    t = sk.tree
    if t.n == 0 or not t.is_connected() or t.m != t.n - 1:
        return False
    if len(set(sk.beta)) != t.n or any(not 0 <= b < g.n for b in sk.beta):
        return False
    if set(sk.gamma) != set(t.edges):
        return False
    nodes = set(sk.beta)
    used_edges: list = []
    interior_seen: set = set()
    for (i, j), paths in sk.gamma.items():
        if not paths:
            return False
        for p in paths:
            if p[0] != sk.beta[i] or p[-1] != sk.beta[j] or len(p) < 2:
                return False
            if len(set(p)) != len(p):
                return False
            for a, b in zip(p, p[1:]):
                if not g.has_edge(a, b):
                    return False
                used_edges.append((min(a, b), max(a, b)))
            for x in p[1:-1]:
                if x in nodes or x in interior_seen or g.degrees[x] != 2:
                    return False
                interior_seen.add(x)
    return len(used_edges) == g.m and set(used_edges) == g.edges


def _chains(g: Graph, nodes: set) -> list | None:
    """Maximal paths between nodes through non-node vertices (each listed once)."""
    seen: set = set()
    out = []
    for s in sorted(nodes):
        for w in g.neighbors[s]:
            path = [s]
            prev, cur = s, w
            while cur not in nodes:
                path.append(cur)
                nb = g.neighbors[cur]
                if len(nb) != 2:
                    return None
                prev, cur = cur, (nb[0] if nb[1] == prev else nb[1])
                if len(path) > g.n:
                    return None
            path.append(cur)
            key = frozenset(frozenset(e) for e in zip(path, path[1:]))
            if key in seen:
                continue
            seen.add(key)
            out.append(tuple(path))
    return out


def _skeleton_from_nodes(g: Graph, nodes: set) -> Skeleton | None:
    """Build the skeleton whose node set is exactly `nodes`, rooted at a center."""
    chains = _chains(g, nodes)
    if chains is None:
        return None
    covered = sum(len(p) - 1 for p in chains)
    if covered != g.m:
        return None  # a cycle of non-node vertices was missed
    order = sorted(nodes)
    nid = {v: i for i, v in enumerate(order)}
    gamma: dict = {}
    for p in chains:
        a, b = nid[p[0]], nid[p[-1]]
        if a == b:
            return None
        if a > b:
            a, b, p = b, a, tuple(reversed(p))
        gamma.setdefault((a, b), []).append(p)
    tree = Graph(len(order), frozenset(gamma))
    if not tree.is_connected() or tree.m != tree.n - 1:
        return None
    root = min(range(tree.n), key=lambda r: (_eccentricity(tree, r), r))
    return Skeleton(tree, root, tuple(order), {e: tuple(sorted(ps)) for e, ps in gamma.items()})


def find_skeleton(g: Graph) -> Skeleton | None:
    """A minimum-depth skeleton of g, or None if g is not a parallel tree."""
    check_cap("ptree", g.n)
    if g.n == 0 or not g.is_connected():
        raise InvalidInputError("parallel tree recognition needs a connected graph")
    if g.n == 1:
        return Skeleton(Graph(1), 0, (0,), {})
    nodes = {v for v in range(g.n) if g.degrees[v] != 2}
    if not nodes:
        # a cycle: two nodes split it into two parallel threads
        walk, prev = [0], None
        while len(walk) < g.n:
            nxt = [w for w in g.neighbors[walk[-1]] if w != prev][0]
            prev = walk[-1]
            walk.append(nxt)
        return _skeleton_from_nodes(g, {0, walk[g.n // 2]})
    chains = _chains(g, nodes)
    if chains is None:
        return None
    for p in chains:
        if p[0] == p[-1]:
            nodes.add(p[len(p) // 2])
    return _skeleton_from_nodes(g, nodes)


def parallel_tree_depth(g: Graph) -> int | None:
    sk = find_skeleton(g)
    return None if sk is None else sk.depth


def is_parallel_edge(g: Graph) -> tuple | None:
    """Endpoints (u, v) of a split of E(g) into internally disjoint u-v paths, or None."""
    if g.n == 0 or not g.is_connected():
        raise InvalidInputError("parallel edge test needs a connected graph")
    if g.n == 1:
        return None
    odd = [v for v in range(g.n) if g.degrees[v] != 2]
    if not odd:
        sk = find_skeleton(g)
        return tuple(sorted(sk.beta))
    if len(odd) != 2:
        return None
    u, v = odd
    chains = _chains(g, set(odd))
    if chains is None or any(p[0] == p[-1] for p in chains):
        return None
    return (u, v)


# ---------------------------------------------------------------- brute-force oracle

def brute_force_depth(g: Graph) -> int | None:
    """Minimum depth over every vertex subset taken as the skeleton node set."""
    if g.n == 1:
        return 0
    best = None
    for r in range(1, g.n + 1):
        for nodes in itertools.combinations(range(g.n), r):
            sel = set(nodes)
            if any(g.degrees[v] != 2 for v in range(g.n) if v not in sel):
                continue
            chains = _chains(g, sel)
            if chains is None or sum(len(p) - 1 for p in chains) != g.m:
                continue
            if any(p[0] == p[-1] for p in chains):
                continue
            pairs = {(min(p[0], p[-1]), max(p[0], p[-1])) for p in chains}
            pos = {v: i for i, v in enumerate(nodes)}
            tree = Graph(len(nodes), frozenset((pos[a], pos[b]) for a, b in pairs))
            if not tree.is_connected() or tree.m != tree.n - 1:
                continue
            depth = min(_eccentricity(tree, x) for x in range(tree.n))
            best = depth if best is None else min(best, depth)
    return best


# ---------------------------------------------------------------- enumeration

def _trees(t: int) -> list:
    import networkx as nx

    if t == 1:
        return [Graph(1)]
    return [from_edges(t, tr.edges()) for tr in nx.nonisomorphic_trees(t)]


def _bundles(budget: int) -> list:
    """Sorted tuples of interior lengths for one parallel edge (at most one direct edge)."""
    out = []

    def rec(prefix, start, left):
        if prefix:
            out.append(tuple(prefix))
        for length in range(start, left + 1):
            if length == 0 and 0 in prefix:
                continue
            rec(prefix + [length], length if length > 0 else 1, left - length)

    rec([], 0, budget)
    return out


def _realize(tree: Graph, bundles: list) -> Graph:
    edges, n = [], tree.n
    for (a, b), bundle in zip(tree.edge_list, bundles):
        for length in bundle:
            prev = a
            for _ in range(length):
                edges.append((prev, n))
                prev = n
                n += 1
            edges.append((prev, b))
    return from_edges(n, edges)


def enumerate_parallel_trees(max_vertices: int, max_depth: int | None = None) -> list:
    """All connected parallel trees with at most max_vertices vertices and depth <= max_depth."""
    if max_vertices < 0:
        raise InvalidInputError("max_vertices must be non-negative")
    check_cap("enumerate", max_vertices)
    found = []
    for t in range(1, max_vertices + 1):
        for tree in _trees(t):
            budget = max_vertices - t
            edges = tree.edge_list

            def rec(i, left, chosen):
                if i == len(edges):
                    found.append(_realize(tree, chosen))
                    return
                for b in _bundles(left):
                    rec(i + 1, left - sum(b), chosen + [b])

            rec(0, budget, [])
    found.sort(key=lambda g: (g.n, g.m, g.edge_list))
    unique = dedupe_isomorphic(found)
    out = []
    for g in unique:
        d = parallel_tree_depth(g)
        if d is None:
            raise AssertionError(f"constructed graph is not recognized: {g}")
        if max_depth is None or d <= max_depth:
            out.append(g)
    return out
