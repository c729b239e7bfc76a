"""Homomorphism and subgraph counting.

hom_brute counts edge-preserving maps by backtracking over host bitsets.
hom_tw2 runs dynamic programming over a tree decomposition of width at most 2.
Subgraph counts come from the spasm: summing over vertex partitions of the
pattern, inj(F, G) = sum_p mu(p) hom(F/p, G) with
mu(p) = prod over blocks B of (-1)^(|B|-1) (|B|-1)!, and
sub(F, G) = inj(F, G) / |Aut(F)|.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, InvalidInputError, cap, check_cap
from .graph import Graph, are_isomorphic, iso_invariant, quotient
from .ptree import Skeleton, find_skeleton, parallel_tree_depth

DEFAULT_BUDGET = 10 ** 9


def _search_order(f: Graph) -> list:
    """BFS order per component, so each vertex after the first sees an earlier neighbor."""
    order, seen = [], set()
    for s in sorted(range(f.n), key=lambda v: (-f.degrees[v], v)):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(f.adj[x], key=lambda v: (-f.degrees[v], v)):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def _count_maps(f: Graph, g: Graph, injective: bool) -> int:
    order = _search_order(f)
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[w] for w in f.adj[v] if pos[w] < i] for i, v in enumerate(order)]
    full = (1 << g.n) - 1
    masks = g.bitmasks
    image = [0] * f.n
    k = f.n

    def rec(i: int, used: int) -> int:
        cand = full
        for j in back[i]:
            cand &= masks[image[j]]
        if injective:
            cand &= ~used
        if i == k - 1:
            return bin(cand).count("1")
        total = 0
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            image[i] = w
            total += rec(i + 1, used | low)
            cand ^= low
        return total

    if k == 0:
        return 1
    return rec(0, 0)


def hom_brute(pattern: Graph, host: Graph, budget: int = DEFAULT_BUDGET) -> int:
    if pattern.n > cap("hom_brute") and host.n ** pattern.n > budget:
        raise CapExceededError(f"hom_brute: {host.n}^{pattern.n} maps exceed budget {budget}")
    return _count_maps(pattern, host, injective=False)


def injective_hom_count(pattern: Graph, host: Graph) -> int:
    return _count_maps(pattern, host, injective=True)


def automorphism_count(g: Graph) -> int:
    return _count_maps(g, g, injective=True)


def sub_brute(pattern: Graph, host: Graph) -> int:
    """Number of subgraphs of host isomorphic to pattern, by direct enumeration."""
    if pattern.n > host.n:
        return 0
    inj = injective_hom_count(pattern, host)
    aut = automorphism_count(pattern)
    assert inj % aut == 0
    return inj // aut


# ---------------------------------------------------------------- tree decompositions

@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple  # tuple of frozensets of pattern vertices
    edges: tuple  # tree edges between bag indices

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1


def validate_decomposition(f: Graph, td: TreeDecomposition) -> None:
    """Raise InvalidInputError unless td is a tree decomposition of f."""
    k = len(td.bags)
    if k == 0:
        if f.n:
            raise InvalidInputError("empty decomposition for a non-empty pattern")
        return
    tree = Graph(k, frozenset(td.edges))
    if tree.m != k - 1 or not tree.is_connected():
        raise InvalidInputError("decomposition bags do not form a tree")
    covered = set().union(*td.bags)
    if covered != set(range(f.n)):
        raise InvalidInputError("decomposition does not cover every vertex")
    for u, v in f.edges:
        if not any(u in b and v in b for b in td.bags):
            raise InvalidInputError(f"edge {(u, v)} is in no bag")
    for v in range(f.n):
        holding = [i for i, b in enumerate(td.bags) if v in b]
        if not tree.subgraph(holding).is_connected():
            raise InvalidInputError(f"bags containing {v} are not connected")


def tw2_decomposition(f: Graph) -> TreeDecomposition | None:
    """Width-2 decomposition by eliminating vertices of degree <= 2; None if treewidth > 2."""
    nb = [set(s) for s in f.adj]
    alive = set(range(f.n))
    elim: list = []
    bag_of: dict = {}
    while alive:
        v = min((x for x in alive if len(nb[x]) <= 2), key=lambda x: (len(nb[x]), x), default=None)
        if v is None:
            return None
        rest = sorted(nb[v])
        bag_of[v] = frozenset([v, *rest])
        elim.append((v, rest))
        if len(rest) == 2:
            a, b = rest
            nb[a].add(b)
            nb[b].add(a)
        for w in rest:
            nb[w].discard(v)
        alive.discard(v)
    index = {v: i for i, (v, _) in enumerate(elim)}
    edges, roots = [], []
    for i, (v, rest) in enumerate(elim):
        if rest:
            parent = min(rest, key=lambda w: index[w])
            edges.append((i, index[parent]))
        else:
            roots.append(i)
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(tuple(bag_of[v] for v, _ in elim), tuple(edges))


def treewidth_at_most_2(f: Graph) -> bool:
    return tw2_decomposition(f) is not None


def skeleton_decomposition(f: Graph, sk: Skeleton | None = None) -> TreeDecomposition:
    """Width-2 decomposition read off a parallel-tree skeleton.

    Each tree edge (parent s, child t) gets a hub bag {s, t}; a path
    s, x1, ..., t hangs off the hub as the chain {s, x_i, x_(i+1)}.
    """
    sk = sk or find_skeleton(f)
    if sk is None:
        raise InvalidInputError("pattern is not a parallel tree")
    bags: list = [frozenset([sk.beta[sk.root]])]
    edges: list = []
    hub = {sk.root: 0}
    queue = [sk.root]
    while queue:
        p = queue.pop(0)
        for c in sorted(sk.tree.adj[p]):
            if c in hub:
                continue
            s, t = sk.beta[p], sk.beta[c]
            bags.append(frozenset([s, t]))
            h = len(bags) - 1
            edges.append((hub[p], h))
            hub[c] = h
            queue.append(c)
            key = (min(p, c), max(p, c))
            for path in sk.gamma[key]:
                if path[0] != s:
                    path = tuple(reversed(path))
                prev = h
                for i in range(len(path) - 2, 0, -1):
                    bags.append(frozenset([s, path[i], path[i + 1]]))
                    edges.append((prev, len(bags) - 1))
                    prev = len(bags) - 1
    return TreeDecomposition(tuple(bags), tuple(edges))


def hom_tw2(pattern: Graph, host: Graph, td: TreeDecomposition | None = None) -> int:
    """hom(pattern, host) by dynamic programming over a width-2 tree decomposition."""
    if td is None:
        td = tw2_decomposition(pattern)
        if td is None:
            raise InvalidInputError("pattern has treewidth above 2")
    validate_decomposition(pattern, td)
    if td.width > 2:
        raise InvalidInputError(f"decomposition has width {td.width}")
    if pattern.n == 0:
        return 1
    n = host.n
    exact_int64 = n ** pattern.n < (1 << 62)
    dtype = np.int64 if exact_int64 else object
    a = host.matrix.astype(dtype)
    k = len(td.bags)
    adj: list = [[] for _ in range(k)]
    for i, j in td.edges:
        adj[i].append(j)
        adj[j].append(i)
    assigned: list = [[] for _ in range(k)]
    for u, v in pattern.edge_list:
        i = next(i for i, b in enumerate(td.bags) if u in b and v in b)
        assigned[i].append((u, v))
    bags = [sorted(b) for b in td.bags]

    def table(t: int, parent: int) -> np.ndarray:
        b = bags[t]
        out = np.ones((n,) * len(b), dtype=dtype)
        for u, v in assigned[t]:
            shape = [1] * len(b)
            shape[b.index(u)] = n
            shape[b.index(v)] = n
            out = out * a.reshape(shape)
        for c in adj[t]:
            if c == parent:
                continue
            msg = table(c, t)
            cb = bags[c]
            drop = tuple(i for i, v in enumerate(cb) if v not in b)
            if drop:
                msg = msg.sum(axis=drop)
            keep = [v for v in cb if v in b]
            shape = [n if v in keep else 1 for v in b]
            out = out * np.asarray(msg, dtype=dtype).reshape(shape)
        return out

    return int(table(0, -1).sum())


# ---------------------------------------------------------------- spasm

def independent_partitions(f: Graph):
    """Yield partitions of V(f) into independent blocks, as lists of sorted lists."""
    blocks: list = []

    def rec(v: int):
        if v == f.n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            if not any(w in f.adj[v] for w in b):
                b.append(v)
                yield from rec(v + 1)
                b.pop()
        blocks.append([v])
        yield from rec(v + 1)
        blocks.pop()

    yield from rec(0)


def mobius(partition) -> int:
    out = 1
    for b in partition:
        s = len(b)
        out *= (-1) ** (s - 1) * math.factorial(s - 1)
    return out


@dataclass(frozen=True)
class SpasmBasis:
    pattern: Graph
    entries: tuple  # (quotient graph, coefficient)
    aut_count: int

    @property
    def graphs(self) -> list:
        return [q for q, _ in self.entries]


def spasm_basis(pattern: Graph) -> SpasmBasis:
    check_cap("spasm", pattern.n)
    buckets: dict = {}
    order: list = []
    for part in independent_partitions(pattern):
        q = quotient(pattern, part)
        key = iso_invariant(q)
        reps = buckets.setdefault(key, [])
        for rep in reps:
            if are_isomorphic(q, rep[0]):
                rep[1] += mobius(part)
                break
        else:
            entry = [q, mobius(part)]
            reps.append(entry)
            order.append(entry)
    entries = sorted(((q, c) for q, c in order), key=lambda e: (-e[0].n, -e[0].m, e[0].edge_list))
    return SpasmBasis(pattern, tuple(entries), automorphism_count(pattern))


def spasm(pattern: Graph) -> list:
    """All homomorphic images of the pattern, one per isomorphism class."""
    return spasm_basis(pattern).graphs


def hom_count(pattern: Graph, host: Graph) -> int:
    """hom via width-2 DP when possible, else brute force."""
    td = tw2_decomposition(pattern)
    if td is not None:
        return hom_tw2(pattern, host, td)
    return hom_brute(pattern, host)


def sub_via_hom(pattern: Graph, host: Graph) -> int:
    if pattern.n > host.n:
        return 0
    basis = spasm_basis(pattern)
    total = sum(c * hom_count(q, host) for q, c in basis.entries if c)
    if total % basis.aut_count:
        raise ArithmeticError("injective count not divisible by |Aut|")
    return total // basis.aut_count


@dataclass(frozen=True)
class CountingPower:
    countable: bool
    witness: Graph | None = None
    witness_depth: int | None = None

    def to_json(self) -> dict:
        out = {"countable": self.countable}
        if self.witness is not None:
            out["witness"] = {"n": self.witness.n, "edges": [list(e) for e in self.witness.edge_list]}
            out["witness_depth"] = self.witness_depth
        return out


def counting_power_check(pattern: Graph, d: int | None = None) -> CountingPower:
    """Countable iff every spasm member is a parallel tree of depth <= d (d=None means unbounded).

    The reported witness is a violating member with fewest vertices, then fewest edges.
    """
    bad = []
    for q in spasm(pattern):
        depth = parallel_tree_depth(q)
        if depth is None or (d is not None and depth > d):
            bad.append((q, depth))
    if not bad:
        return CountingPower(True)
    q, depth = min(bad, key=lambda e: (e[0].n, e[0].m, e[0].edge_list))
    return CountingPower(False, q, depth)


__all__ = [
    "CountingPower",
    "SpasmBasis",
    "TreeDecomposition",
    "automorphism_count",
    "counting_power_check",
    "hom_brute",
    "hom_count",
    "hom_tw2",
    "independent_partitions",
    "injective_hom_count",
    "mobius",
    "skeleton_decomposition",
    "spasm",
    "spasm_basis",
    "sub_brute",
    "sub_via_hom",
    "treewidth_at_most_2",
    "tw2_decomposition",
    "validate_decomposition",
]
