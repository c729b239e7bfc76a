"""Comparison refinements: 1-WL, 2-FWL, local k-tuple refinement, node-marking subgraph refinement."""
from __future__ import annotations

import numpy as np

from .errors import InvalidInputError, check_cap
from .graph import Graph
from .refine import (
    STABLE,
    Refinement,
    RefinementTrace,
    korder_refinement,
    run,
    spectral_float_refinement,
    spectral_refinement,
    tuple_coords,
)


def _neighbor_multiset(colors: np.ndarray, nb: np.ndarray) -> np.ndarray:
    """Sorted neighbor colors per row, padding slots (-1 in nb) kept as -1."""
    vals = np.where(nb >= 0, colors[np.maximum(nb, 0)], -1)
    return np.sort(vals, axis=1)


def wl1_refinement(g: Graph) -> Refinement:
    nb = g.padded_neighbors

    def step(colors):
        return np.concatenate([colors[:, None], _neighbor_multiset(colors, nb)], axis=1)

    return Refinement("wl1", g.n, np.zeros((g.n, 1), dtype=np.int64), step, shape=(g.n,))


def wl1(g: Graph, d=STABLE) -> RefinementTrace:
    return run(wl1_refinement(g), d)


def atomic_types(g: Graph, k: int) -> np.ndarray:
    """Base-3 code of the ordered pattern (equal / adjacent / neither) over all index pairs."""
    coords = tuple_coords(g.n, k)
    a = g.matrix
    code = np.zeros(len(coords), dtype=np.int64)
    for i in range(k):
        for j in range(i + 1, k):
            ui, uj = coords[:, i], coords[:, j]
            t = np.where(ui == uj, 0, np.where(a[ui, uj] == 1, 1, 2))
            code = code * 3 + t
    return code


def fwl2_refinement(g: Graph) -> Refinement:
    n = g.n
    check_cap("fwl2", n)
    init = atomic_types(g, 2)[:, None]

    def step(colors):
        c = colors.reshape(n, n)
        width = int(c.max()) + 1 if c.size else 1
        # keys[u, v, w] = (c[u, w], c[w, v])
        keys = c[:, None, :] * width + c.T[None, :, :]
        keys = np.sort(keys.reshape(n * n, n), axis=1)
        return np.concatenate([colors[:, None], keys], axis=1)

    return Refinement("fwl2", n * n, init, step, shape=(n, n))


def fwl2(g: Graph, d=STABLE) -> RefinementTrace:
    return run(fwl2_refinement(g), d)


def local_refinement(g: Graph, k: int) -> Refinement:
    """k-tuple refinement where slot j is replaced only by graph neighbors of u_j."""
    if k < 1:
        raise InvalidInputError("local refinement needs k >= 1")
    n = g.n
    check_cap("local2" if k <= 2 else "local4", n)
    coords = tuple_coords(n, k)
    total = len(coords)
    flat = np.arange(total, dtype=np.int64)
    nb = g.padded_neighbors
    init = atomic_types(g, k)[:, None]

    def step(colors):
        parts = [colors[:, None]]
        for j in range(k):
            stride = n ** (k - 1 - j)
            cand = nb[coords[:, j]]  # (total, maxdeg)
            repl = flat[:, None] + (np.maximum(cand, 0) - coords[:, j, None]) * stride
            vals = np.where(cand >= 0, colors[repl], -1)
            parts.append(np.sort(vals, axis=1))
        return np.concatenate(parts, axis=1)

    return Refinement(f"local{k}", total, init, step, shape=(n,) * k)


def local_k(g: Graph, k: int, d=STABLE) -> RefinementTrace:
    return run(local_refinement(g, k), d)


def subgraph_refinement(g: Graph) -> Refinement:
    """1-WL on n copies of g; copy w marks vertex w.  Objects are ordered copy-major."""
    n = g.n
    nb = g.padded_neighbors
    copies = np.arange(n, dtype=np.int64)
    # union neighbor table: copy w, vertex v -> w*n + nb[v]
    unb = np.where(nb[None, :, :] >= 0, copies[:, None, None] * n + nb[None, :, :], -1).reshape(n * n, nb.shape[1])
    init = (copies[:, None] == copies[None, :]).astype(np.int64).reshape(n * n, 1)
    groups = np.repeat(copies, n)

    def step(colors):
        return np.concatenate([colors[:, None], _neighbor_multiset(colors, unb)], axis=1)

    return Refinement("subgraph", n * n, init, step, groups=groups, shape=(n, n))


def subgraph_gnn(g: Graph, d=STABLE) -> RefinementTrace:
    return run(subgraph_refinement(g), d)


ALGOS = ("spec", "spec-float", "wl1", "fwl2", "local2", "local4", "subgraph", "kspec")


def refinement_for(algo: str, g: Graph, k: int = 1, L: int | None = None, **kw) -> Refinement:
    """Build the named refinement for one graph."""
    if algo == "spec":
        return spectral_refinement(g, L, kw.get("reduce", True))
    if algo == "spec-float":
        return spectral_float_refinement(g, kw.get("eig_tolerance", 1e-9))
    if algo == "wl1":
        return wl1_refinement(g)
    if algo == "fwl2":
        return fwl2_refinement(g)
    if algo == "local2":
        return local_refinement(g, 2)
    if algo == "local4":
        return local_refinement(g, 4)
    if algo == "subgraph":
        return subgraph_refinement(g)
    if algo == "kspec" or algo.startswith("kspec"):
        order = int(algo[5:]) if len(algo) > 5 else k
        return korder_refinement(g, order, L)
    raise InvalidInputError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGOS)}")


def refine(algo: str, g: Graph, d=STABLE, **kw) -> RefinementTrace:
    return run(refinement_for(algo, g, **kw), d)
