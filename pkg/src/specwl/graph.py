"""Simple undirected graphs, graph6/edge-list I/O, isomorphism and named families."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import AdjacentBlockError, GraphFormatError, InvalidInputError, check_cap


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices 0..n-1; edges are stored as sorted pairs."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInputError("vertex count must be non-negative")
        norm = set()
        for e in self.edges:
            u, v = e
            u, v = int(u), int(v)
            if u == v:
                raise InvalidInputError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInputError(f"edge {(u, v)} out of range for n={self.n}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_list(self) -> tuple:
        return tuple(sorted(self.edges))

    @cached_property
    def adj(self) -> tuple:
        nb = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def neighbors(self) -> tuple:
        """Sorted neighbor tuples."""
        return tuple(tuple(sorted(s)) for s in self.adj)

    @cached_property
    def degrees(self) -> tuple:
        return tuple(len(s) for s in self.adj)

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def bitmasks(self) -> tuple:
        return tuple(sum(1 << w for w in s) for s in self.adj)

    @cached_property
    def matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        a.setflags(write=False)
        return a

    @cached_property
    def padded_neighbors(self) -> np.ndarray:
        """(n, max_degree) neighbor table padded with -1."""
        out = np.full((self.n, max(self.max_degree, 1)), -1, dtype=np.int64)
        for u, nb in enumerate(self.neighbors):
            out[u, : len(nb)] = nb
        out.setflags(write=False)
        return out

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def components(self) -> list:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Vertex v of self becomes perm[v]."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidInputError("relabeling must be a permutation")
        return Graph(self.n, frozenset((perm[u], perm[v]) for u, v in self.edges))

    def subgraph(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabeled in increasing vertex order."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        return Graph(len(vs), frozenset((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edge_list)})"


def from_edges(n: int, edges: Iterable) -> Graph:
    return Graph(n, frozenset(tuple(e) for e in edges))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return from_edges(off, edges)


# ---------------------------------------------------------------- graph6

def _g6_size(text: str) -> tuple[int, int]:
    if not text:
        raise GraphFormatError("empty graph6 string")
    c = ord(text[0])
    if c == 126:
        raise GraphFormatError("graph6 headers for n > 62 are not supported")
    if not 63 <= c < 126:
        raise GraphFormatError(f"malformed length byte {text[0]!r}")
    return c - 63, 1


def parse_graph6(text: str) -> Graph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    n, start = _g6_size(text)
    body = text[start:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}")
    bits = []
    for ch in body:
        c = ord(ch)
        if not 63 <= c <= 126:
            raise GraphFormatError(f"character {ch!r} outside 63..126")
        c -= 63
        bits.extend((c >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits")
    edges, k = [], 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return from_edges(n, edges)


def encode_graph6(g: Graph) -> str:
    if g.n > 62:
        raise InvalidInputError("graph6 encoding supports n <= 62")
    bits = [1 if (i, j) in g.edges else 0 for j in range(1, g.n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphFormatError("edge list must start with 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"bad edge list: {exc}") from None
    if len(pairs) != m:
        raise GraphFormatError(f"header says {m} edges, found {len(pairs)}")
    try:
        g = from_edges(n, pairs)
    except InvalidInputError as exc:
        raise GraphFormatError(str(exc)) from None
    if g.m != m:
        raise GraphFormatError("duplicate edges in edge list")
    return g


def encode_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edge_list]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Accept either a graph6 line or an edge list."""
    stripped = text.strip()
    if stripped and "\n" not in stripped and " " not in stripped:
        return parse_graph6(stripped)
    return parse_edge_list(text)


# ---------------------------------------------------------------- isomorphism

def _joint_colors(g: Graph, h: Graph) -> tuple[list, list]:
    """Stable 1-WL colors computed on both graphs with a shared palette."""
    cg, ch = list(g.degrees), list(h.degrees)
    while True:
        sig_g = [(cg[u], tuple(sorted(cg[w] for w in g.adj[u]))) for u in range(g.n)]
        sig_h = [(ch[u], tuple(sorted(ch[w] for w in h.adj[u]))) for u in range(h.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sig_g) | set(sig_h)))}
        ng, nh = [palette[s] for s in sig_g], [palette[s] for s in sig_h]
        if len(set(ng)) == len(set(cg)) and len(set(nh)) == len(set(ch)):
            return ng, nh
        cg, ch = ng, nh


def find_isomorphism(g: Graph, h: Graph, limit: int | None = None) -> list | None:
    """Return perm with perm[v] the image in h of v in g, or None."""
    check_cap("isomorphism", max(g.n, h.n), limit)
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return None
    n = g.n
    cg, ch = _joint_colors(g, h)
    if sorted(cg) != sorted(ch):
        return None
    # order g's vertices: rarest color first, then keep the order connected
    freq = {c: cg.count(c) for c in cg}
    order, placed = [], set()
    while len(order) < n:
        cand = [v for v in range(n) if v not in placed]
        linked = [v for v in cand if g.adj[v] & placed]
        pool = linked or cand
        v = min(pool, key=lambda x: (freq[cg[x]], -len(g.adj[x] & placed), x))
        order.append(v)
        placed.add(v)
    classes = {}
    for w in range(n):
        classes.setdefault(ch[w], []).append(w)
    perm = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in classes[cg[v]]:
            if used[w]:
                continue
            ok = True
            for x in range(i):
                u = order[x]
                if (u in g.adj[v]) != (perm[u] in h.adj[w]):
                    ok = False
                    break
            if ok:
                perm[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                used[w] = False
        perm[v] = -1
        return False

    return perm if extend(0) else None


def are_isomorphic(g: Graph, h: Graph, limit: int | None = None) -> bool:
    return find_isomorphism(g, h, limit) is not None


def verify_isomorphism(g: Graph, h: Graph, perm: Sequence[int]) -> bool:
    return g.n == h.n and sorted(perm) == list(range(g.n)) and g.relabel(perm) == h


def iso_invariant(g: Graph) -> tuple:
    """Cheap isomorphism-invariant bucket key."""
    deg = g.degrees
    return (g.n, g.m, tuple(sorted(deg)), tuple(sorted(tuple(sorted(deg[w] for w in g.adj[u])) for u in range(g.n))))


def dedupe_isomorphic(graphs: Iterable[Graph], limit: int | None = None) -> list:
    """Keep the first representative of each isomorphism class, preserving order."""
    buckets: dict = {}
    out = []
    for g in graphs:
        key = iso_invariant(g)
        reps = buckets.setdefault(key, [])
        if any(are_isomorphic(g, r, limit) for r in reps):
            continue
        reps.append(g)
        out.append(g)
    return out


# ---------------------------------------------------------------- quotient

def quotient(g: Graph, partition: Sequence[Iterable[int]]) -> Graph:
    """Merge each block into one vertex; blocks are numbered in the given order."""
    block_of = [-1] * g.n
    for b, block in enumerate(partition):
        for v in block:
            if not 0 <= v < g.n:
                raise InvalidInputError(f"vertex {v} out of range")
            if block_of[v] != -1:
                raise InvalidInputError(f"vertex {v} appears in two blocks")
            block_of[v] = b
    if -1 in block_of:
        raise InvalidInputError("partition does not cover every vertex")
    edges = set()
    for u, v in g.edges:
        a, b = block_of[u], block_of[v]
        if a == b:
            raise AdjacentBlockError(f"adjacent vertices {u},{v} share block {a}")
        edges.add((min(a, b), max(a, b)))
    return Graph(len(partition), frozenset(edges))


# ---------------------------------------------------------------- families

def _path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _clique(n: int) -> Graph:
    _need(n >= 1, "clique needs n >= 1")
    return from_edges(n, [(i, j) for j in range(n) for i in range(j)])


def _star(m: int) -> Graph:
    _need(m >= 1, "star needs m >= 1 leaves")
    return from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def _wheel(m: int) -> Graph:
    _need(m >= 3, "wheel needs a rim of at least 3")
    rim = [(1 + i, 1 + (i + 1) % m) for i in range(m)]
    return from_edges(m + 1, rim + [(0, i) for i in range(1, m + 1)])


def _fan(m: int) -> Graph:
    _need(m >= 2, "fan needs a path of at least 2 vertices")
    return from_edges(m + 1, [(i, i + 1) for i in range(1, m)] + [(0, i) for i in range(1, m + 1)])


def _theta(*lengths: int) -> Graph:
    """Vertices 0 and 1 joined by internally disjoint paths with the given edge counts."""
    _need(len(lengths) >= 1 and all(x >= 1 for x in lengths), "theta path lengths must be >= 1")
    _need(sum(1 for x in lengths if x == 1) <= 1, "theta allows at most one direct edge")
    edges, n = [], 2
    for length in lengths:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return from_edges(n, edges)


def _doubled_path(k: int) -> Graph:
    """Path on 2k+2 vertices with each edge replaced by two length-2 paths."""
    _need(k >= 0, "doubled_path needs k >= 0")
    spine = 2 * k + 2
    edges, n = [], spine
    for i in range(spine - 1):
        for _ in range(2):
            edges += [(i, n), (n, i + 1)]
            n += 1
    return from_edges(n, edges)


def _dumbbell(a: int, b: int) -> Graph:
    """Cycles C_a and C_b joined by one bridge edge."""
    _need(a >= 3 and b >= 3, "dumbbell cycles need length >= 3")
    edges = [(i, (i + 1) % a) for i in range(a)]
    edges += [(a + i, a + (i + 1) % b) for i in range(b)]
    return from_edges(a + b, edges + [(0, a)])


def _empty(n: int) -> Graph:
    _need(n >= 0, "empty needs n >= 0")
    return Graph(n)


def _complete_bipartite(a: int, b: int) -> Graph:
    _need(a >= 1 and b >= 1, "complete_bipartite needs positive sides")
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidInputError(msg)


FAMILIES = {
    "path": (_path, 1),
    "cycle": (_cycle, 1),
    "clique": (_clique, 1),
    "star": (_star, 1),
    "wheel": (_wheel, 1),
    "fan": (_fan, 1),
    "theta": (_theta, None),
    "doubled_path": (_doubled_path, 1),
    "dumbbell": (_dumbbell, 2),
    "empty": (_empty, 1),
    "complete_bipartite": (_complete_bipartite, 2),
}


def make_family(name: str, params: Sequence[int]) -> Graph:
    if name not in FAMILIES:
        raise InvalidInputError(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}")
    fn, arity = FAMILIES[name]
    params = [int(p) for p in params]
    if arity is not None and len(params) != arity:
        raise InvalidInputError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


def parse_family(spec: str) -> Graph:
    """Parse 'name:p1,p2' family syntax."""
    name, _, rest = spec.partition(":")
    try:
        params = [int(x) for x in rest.split(",") if x.strip()]
    except ValueError:
        raise InvalidInputError(f"bad family parameters in {spec!r}") from None
    return make_family(name, params)
