"""Color refinement engine and spectral-invariant refinement.

Every algorithm here is a generator of (colors, digest) states.  Colors are
canonical ranks of signature rows, so they depend only on the graph up to
isomorphism.  The digest chains the previous digest with the sorted distinct
signatures and their multiplicities, which makes digests of two graphs equal
at iteration t exactly when their color multisets have agreed at every
iteration up to t.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .errors import EigensolverError, InvalidInputError, check_cap
from .graph import Graph
from .walks import MinimalPolynomial, reduced_powers

STABLE = "stable"


def rank_rows(sig: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Canonical ranks of the rows of an integer matrix under lexicographic order.

    Returns (rank per row, distinct rows in order, multiplicities).
    """
    sig = np.ascontiguousarray(sig, dtype=np.int64)
    if sig.ndim != 2:
        raise ValueError("signature matrix must be 2-D")
    if sig.shape[0] == 0:
        return np.zeros(0, dtype=np.int64), sig, np.zeros(0, dtype=np.int64)
    order = np.lexsort(sig.T[::-1])
    srt = sig[order]
    new = np.ones(len(srt), dtype=bool)
    new[1:] = np.any(srt[1:] != srt[:-1], axis=1)
    ids_sorted = np.cumsum(new) - 1
    ranks = np.empty(len(sig), dtype=np.int64)
    ranks[order] = ids_sorted
    counts = np.bincount(ids_sorted)
    return ranks, srt[new], counts


def _digest(*parts) -> str:
    h = hashlib.blake2b(digest_size=16)
    for p in parts:
        if isinstance(p, np.ndarray):
            arr = np.ascontiguousarray(p, dtype="<i8")
            h.update(repr(arr.shape).encode())
            h.update(arr.tobytes())
        elif isinstance(p, bytes):
            h.update(p)
        else:
            h.update(repr(p).encode())
        h.update(b"|")
    return h.hexdigest()


def num_classes(colors: np.ndarray) -> int:
    return int(len(np.unique(colors))) if len(colors) else 0


def same_partition(a, b) -> bool:
    """True if two color vectors induce the same partition."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    pairs = np.unique(np.stack([a.ravel(), b.ravel()], axis=1), axis=0)
    return len(pairs) == num_classes(a) == num_classes(b)


def refines(fine, coarse) -> bool:
    """True if the partition of `fine` refines that of `coarse`."""
    fine, coarse = np.asarray(fine).ravel(), np.asarray(coarse).ravel()
    pairs = np.unique(np.stack([fine, coarse], axis=1), axis=0)
    return len(pairs) == num_classes(fine)


@dataclass
class Refinement:
    """A refinement algorithm bound to one input graph.

    `initial` is the iteration-0 signature matrix (one row per object), and
    `step(colors)` builds the next signature matrix with the old color in
    column 0.  `groups`, when set, assigns objects to groups and the graph
    invariant becomes the multiset over groups of color multisets.
    """

    algo: str
    objects: int
    initial: np.ndarray
    step: Callable[[np.ndarray], np.ndarray]
    context: str = ""
    groups: np.ndarray | None = None
    shape: tuple = ()

    def _invariant(self, prev: str, context: str, colors, uniq, counts) -> str:
        if self.groups is None or len(self.groups) == 0:
            return _digest(prev, context, uniq, counts)
        ng = int(self.groups.max()) + 1
        per = np.sort(colors.reshape(ng, -1), axis=1)
        _, rows, mult = rank_rows(per)
        return _digest(prev, context, uniq, rows, mult)

    def states(self) -> Iterator[tuple[np.ndarray, str]]:
        # the edge-feature context only becomes visible from iteration 1 on
        colors, uniq, counts = rank_rows(self.initial)
        h = self._invariant("", "", colors, uniq, counts)
        yield colors, h
        while True:
            colors, uniq, counts = rank_rows(self.step(colors))
            h = self._invariant(h, self.context, colors, uniq, counts)
            yield colors, h


@dataclass
class RefinementTrace:
    algo: str
    partitions: list = field(default_factory=list)  # list of np.ndarray color vectors
    hashes: list = field(default_factory=list)
    stable: bool = False
    shape: tuple = ()

    def __len__(self) -> int:
        return len(self.partitions)

    @property
    def final(self) -> np.ndarray:
        return self.partitions[-1]

    def classes(self, t: int) -> int:
        return num_classes(self.partitions[t])

    def to_json(self) -> dict:
        return {
            "algo": self.algo,
            "shape": list(self.shape),
            "stable": self.stable,
            "iterations": [
                {"colors": [int(c) for c in p], "classes": num_classes(p), "hash": h}
                for p, h in zip(self.partitions, self.hashes)
            ],
        }


def _check_d(d) -> None:
    if d != STABLE and (not isinstance(d, (int, np.integer)) or d < 0):
        raise InvalidInputError("iterations must be a non-negative integer or 'stable'")


def run(ref: Refinement, d=STABLE) -> RefinementTrace:
    """Collect iterations 0..d, or until the partition repeats when d is 'stable'."""
    _check_d(d)
    trace = RefinementTrace(ref.algo, shape=ref.shape)
    prev = None
    for t, (colors, h) in enumerate(ref.states()):
        trace.partitions.append(colors)
        trace.hashes.append(h)
        k = num_classes(colors)
        if prev is not None and k == prev:
            trace.stable = True
        if d == STABLE and trace.stable:
            break
        if d != STABLE and t >= d:
            break
        prev = k
    return trace


@dataclass(frozen=True)
class Verdict:
    distinguished_at: int | None  # None = indistinguishable through `checked`
    checked: int

    @property
    def distinguished(self) -> bool:
        return self.distinguished_at is not None

    def to_json(self) -> dict:
        if self.distinguished:
            return {"verdict": "distinguished", "distinguished_at": self.distinguished_at}
        return {"verdict": "indistinguishable", "through": self.checked}


def compare(ref_g: Refinement, ref_h: Refinement, d=STABLE) -> Verdict:
    """Lock-step comparison of two refinements.

    Stops at the first iteration whose digests differ, or once both
    partitions have stopped splitting with digests still equal; from there on
    no later iteration can tell the graphs apart.
    """
    _check_d(d)
    prev = None
    for t, ((cg, hg), (ch, hh)) in enumerate(zip(ref_g.states(), ref_h.states())):
        if hg != hh:
            return Verdict(t, t)
        k = (num_classes(cg), num_classes(ch))
        if d != STABLE and t >= d:
            return Verdict(None, t)
        if prev == k:
            return Verdict(None, t)
        prev = k
    raise AssertionError("unreachable")


# ---------------------------------------------------------------- vertex refinements

def pair_features(features: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rank the (n, n, w) per-pair feature rows; return (pid matrix, distinct rows)."""
    n = features.shape[0]
    pid, uniq, _ = rank_rows(features.reshape(n * n, -1))
    return pid.reshape(n, n), uniq


def _pair_features_object(mats: list) -> tuple[np.ndarray, list]:
    n = mats[0].shape[0]
    keys = [tuple(int(m[u, v]) for m in mats) for u in range(n) for v in range(n)]
    uniq = sorted(set(keys))
    pos = {k: i for i, k in enumerate(uniq)}
    pid = np.array([pos[k] for k in keys], dtype=np.int64).reshape(n, n)
    return pid, uniq


def vertex_refinement(algo: str, pid: np.ndarray, context: str) -> Refinement:
    """Refinement with edge features: (c[u], multiset over all v of (c[v], pid[u, v]))."""
    n = pid.shape[0]
    width = int(pid.max()) + 1 if n else 1

    def step(colors: np.ndarray) -> np.ndarray:
        keys = np.sort(colors[None, :] * width + pid, axis=1)
        return np.concatenate([colors[:, None], keys], axis=1)

    return Refinement(algo, n, np.zeros((n, 1), dtype=np.int64), step, context, shape=(n,))


@dataclass(frozen=True)
class WalkFeatures:
    """Per-pair walk-profile ranks plus a digest of the distinct profiles."""

    pid: np.ndarray
    context: str
    length: int
    minpoly: MinimalPolynomial | None


def walk_features(g: Graph, L: int | None = None, reduce: bool = True) -> WalkFeatures:
    """Rank walk profiles of length L (default n).

    With reduce=True the profiles are truncated at the minimal-polynomial
    degree m when m <= L; the polynomial itself joins the digest, so equal
    digests still mean equal full-length profile sets.
    """
    L = g.n if L is None else L
    if L < 1:
        L = 1
    if reduce:
        mats, mp = reduced_powers(g, L)
    else:
        from .walks import walk_powers
        mats, mp = walk_powers(g, L), None
    if g.n == 0:
        return WalkFeatures(np.zeros((0, 0), dtype=np.int64), _digest("walk", 0), L, None)
    if any(m.dtype == object for m in mats):
        pid, uniq = _pair_features_object(mats)
        body = ";".join(",".join(map(str, row)) for row in uniq)
    else:
        pid, uniq = pair_features(np.stack(mats, axis=2))
        body = ";".join(",".join(map(str, row)) for row in uniq.tolist())
    if mp is not None:
        head = ("minpoly", mp.degree, mp.coeffs)
    else:
        head = ("length", L)
    return WalkFeatures(pid, _digest("walk", head, body.encode()), L, mp)


def spectral_refinement(g: Graph, L: int | None = None, reduce: bool = True) -> Refinement:
    wf = walk_features(g, L, reduce)
    return vertex_refinement("spec", wf.pid, wf.context)


def spectral_refine(g: Graph, d=STABLE, L: int | None = None, reduce: bool = True) -> RefinementTrace:
    """Spectral-invariant refinement computed through exact walk profiles."""
    return run(spectral_refinement(g, L, reduce), d)


# ---------------------------------------------------------------- floating-point projections

@dataclass(frozen=True)
class Eigenspaces:
    values: np.ndarray  # distinct eigenvalues, ascending
    projections: np.ndarray  # shape (k, n, n)


def eigenspaces(g: Graph, eig_tolerance: float = 1e-9) -> Eigenspaces:
    if eig_tolerance <= 0:
        raise InvalidInputError("eig_tolerance must be positive")
    a = g.matrix.astype(float)
    try:
        vals, vecs = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(str(exc)) from exc
    if not (np.all(np.isfinite(vals)) and np.all(np.isfinite(vecs))):
        raise EigensolverError("non-finite eigendecomposition")
    groups, start = [], 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > eig_tolerance:
            groups.append((start, i))
            start = i
    lam = np.array([vals[s:e].mean() for s, e in groups])
    proj = np.stack([vecs[:, s:e] @ vecs[:, s:e].T for s, e in groups]) if groups else np.zeros((0, 0, 0))
    return Eigenspaces(lam, proj)


def projection_profiles(g: Graph, eig_tolerance: float = 1e-9, decimals: int = 9) -> np.ndarray:
    """(n, n, 2k) integer grid of (eigenvalue, P_lambda[u, v]) per distinct eigenvalue."""
    es = eigenspaces(g, eig_tolerance)
    scale = 10.0 ** decimals
    lam = np.rint(es.values * scale).astype(np.int64)
    p = np.rint(es.projections * scale).astype(np.int64) + 0  # +0 folds -0
    n, k = g.n, len(lam)
    out = np.empty((n, n, 2 * k), dtype=np.int64)
    out[:, :, 0::2] = lam[None, None, :]
    out[:, :, 1::2] = np.moveaxis(p, 0, 2)
    return out


def spectral_float_refinement(g: Graph, eig_tolerance: float = 1e-9, decimals: int = 9) -> Refinement:
    if g.n == 0:
        return vertex_refinement("spec-float", np.zeros((0, 0), dtype=np.int64), "")
    pid, uniq = pair_features(projection_profiles(g, eig_tolerance, decimals))
    return vertex_refinement("spec-float", pid, _digest("proj", uniq))


def spectral_refine_float(g: Graph, d=STABLE, eig_tolerance: float = 1e-9, decimals: int = 9) -> RefinementTrace:
    """Spectral refinement using rounded eigenvalue/projection pairs as edge features."""
    return run(spectral_float_refinement(g, eig_tolerance, decimals), d)


# ---------------------------------------------------------------- k-order spectral refinement

def tuple_coords(n: int, k: int) -> np.ndarray:
    """(n**k, k) coordinates of all k-tuples in row-major order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((n,) * k).reshape(k, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


def korder_refinement(g: Graph, k: int, L: int | None = None) -> Refinement:
    if k < 1:
        raise InvalidInputError("order k must be >= 1")
    n = g.n
    check_cap("korder", n ** k)
    wf = walk_features(g, L)
    pid = wf.pid
    width = int(pid.max()) + 1 if n else 1
    coords = tuple_coords(n, k)
    total = len(coords)
    flat = np.arange(total, dtype=np.int64)
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    if pairs:
        initial = np.stack([pid[coords[:, i], coords[:, j]] for i, j in pairs], axis=1)
    else:
        initial = np.zeros((total, 1), dtype=np.int64)
    vs = np.arange(n, dtype=np.int64)

    def step(colors: np.ndarray) -> np.ndarray:
        parts = [colors[:, None]]
        for j in range(k):
            stride = n ** (k - 1 - j)
            repl = flat[:, None] + (vs[None, :] - coords[:, j, None]) * stride
            keys = colors[repl] * width + pid[coords[:, j, None], vs[None, :]]
            parts.append(np.sort(keys, axis=1))
        return np.concatenate(parts, axis=1)

    return Refinement(f"kspec{k}", total, initial, step, wf.context, shape=(n,) * k)


def korder_refine(g: Graph, k: int, d=STABLE, L: int | None = None) -> RefinementTrace:
    """k-order spectral refinement over all k-tuples of vertices."""
    return run(korder_refinement(g, k, L), d)


def compare_graphs(g: Graph, h: Graph, algo: str = "spec", d=STABLE, **kw) -> Verdict:
    """First iteration at which the two graphs' invariants differ, if any."""
    from .wl import refinement_for

    if algo in ("spec", "kspec") or algo.startswith("kspec"):
        kw.setdefault("L", max(g.n, h.n, 1))
    return compare(refinement_for(algo, g, **kw), refinement_for(algo, h, **kw), d)
