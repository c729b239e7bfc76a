"""Exact walk-count tables and the minimal polynomial of the adjacency matrix.

Entry (u, v, k) of a walk table is the number of length-k walks from u to v,
i.e. (A^k)[u, v].  Powers are computed by repeated exact multiplication:
int64 while a degree bound proves there is no overflow, Python integers after.

For refinement only the first m powers matter, where m is the degree of the
minimal polynomial of A: every later power is a fixed linear combination of
A^0..A^{m-1}, with coefficients that depend on the graph alone.  The minimal
polynomial is certified exactly (candidate found modulo a prime, coefficients
solved over the rationals, identity re-checked on every entry in integers).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidInputError
from .graph import Graph

_PRIME = 2_147_483_629  # largest prime below 2**31
_INT64_SAFE = 1 << 62


def _next_power(a: np.ndarray, cur: np.ndarray, g: Graph, bound: int) -> tuple[np.ndarray, int]:
    """Return A @ cur and an upper bound on its entries."""
    delta = max(g.max_degree, 1)
    nb = delta * bound
    if cur.dtype != object and nb < _INT64_SAFE:
        return a @ cur, nb
    cur = cur.astype(object)
    out = np.zeros_like(cur)
    for u, row in enumerate(g.neighbors):
        for w in row:
            out[u] = out[u] + cur[w]
    return out, nb


@dataclass(frozen=True)
class WalkTable:
    """Exact matrices A^0..A^{L-1}, stacked along the last axis of `counts`."""

    counts: np.ndarray  # shape (n, n, L); int64 or object dtype

    @property
    def length(self) -> int:
        return self.counts.shape[2]

    def profile(self, u: int, v: int) -> tuple:
        return tuple(int(x) for x in self.counts[u, v])

    def power(self, k: int) -> np.ndarray:
        return self.counts[:, :, k]


def walk_powers(g: Graph, count: int) -> list:
    """List of exact matrices A^0..A^{count-1}."""
    if count < 1:
        raise InvalidInputError("need at least one power")
    a = g.matrix
    cur = np.eye(g.n, dtype=np.int64)
    bound = 1
    out = [cur]
    for _ in range(count - 1):
        cur, bound = _next_power(a, cur, g, bound)
        out.append(cur)
    return out


def _stack(mats: list) -> np.ndarray:
    if any(m.dtype == object for m in mats):
        mats = [m.astype(object) for m in mats]
    return np.stack(mats, axis=2)


def walk_profiles(g: Graph, L: int) -> WalkTable:
    return WalkTable(_stack(walk_powers(g, L)))


# ---------------------------------------------------------------- minimal polynomial

class _ModEchelon:
    """Incremental row echelon form over GF(p) for flattened matrices."""

    def __init__(self):
        self.rows: list = []  # (pivot, normalized row)

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        vec = vec.copy()
        for piv, row in self.rows:
            c = int(vec[piv])
            if c:
                vec = (vec - c * row) % _PRIME
        return vec

    def add(self, vec: np.ndarray) -> bool:
        """Insert vec; return False if it was dependent on earlier rows."""
        red = self.reduce(vec)
        nz = np.flatnonzero(red)
        if nz.size == 0:
            return False
        piv = int(nz[0])
        inv = pow(int(red[piv]), _PRIME - 2, _PRIME)
        self.rows.append((piv, (red * inv) % _PRIME))
        return True


def _mod_vec(mat: np.ndarray) -> np.ndarray:
    if mat.dtype == object:
        return np.array([int(x) % _PRIME for x in mat.ravel()], dtype=np.int64)
    return mat.ravel() % _PRIME


def _solve_exact(rows: list, rhs: list) -> list | None:
    """Solve the square rational system rows @ c = rhs; None if singular."""
    k = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][k] for r in range(k)]


@dataclass(frozen=True)
class MinimalPolynomial:
    """A^m = sum(coeffs[i] * A^i for i < m), certified in exact arithmetic."""

    degree: int
    coeffs: tuple


def _certify(mats: list, pivots: list) -> MinimalPolynomial | None:
    m = len(mats) - 1
    rows = [[int(mats[j].flat[p]) for j in range(m)] for p in pivots]
    rhs = [int(mats[m].flat[p]) for p in pivots]
    sol = _solve_exact(rows, rhs)
    if sol is None or any(c.denominator != 1 for c in sol):
        return None
    coeffs = [int(c) for c in sol]
    acc = np.zeros(mats[0].shape, dtype=object)
    for c, mat in zip(coeffs, mats[:m]):
        if c:
            acc = acc + c * mat.astype(object)
    if not np.array_equal(acc, mats[m].astype(object)):
        return None
    return MinimalPolynomial(m, tuple(coeffs))


def reduced_powers(g: Graph, L: int) -> tuple[list, MinimalPolynomial | None]:
    """Powers A^0..A^{min(L, m)-1}, plus the minimal polynomial if m <= L.

    When the polynomial is returned, the full length-L profile of any pair is
    a fixed linear image of its first m entries, so the truncated profiles
    carry exactly the same equality information.
    """
    if L < 1:
        raise InvalidInputError("need at least one power")
    if g.n == 0:
        return [np.zeros((0, 0), dtype=np.int64)], None
    a = g.matrix
    ech = _ModEchelon()
    mats = [np.eye(g.n, dtype=np.int64)]
    ech.add(_mod_vec(mats[0]))
    bound = 1
    exact_failed = False
    while True:
        if len(mats) > L:
            return mats[:L], None
        cur, bound = _next_power(a, mats[-1], g, bound)
        vec = _mod_vec(cur)
        if exact_failed or ech.add(vec):
            mats.append(cur)
            continue
        mats.append(cur)
        cert = _certify(mats, [piv for piv, _ in ech.rows])
        if cert is not None:
            if cert.degree <= L:
                return mats[:cert.degree], cert
            return mats[:L], None
        # dependence only modulo the prime: fall back to unreduced powers
        exact_failed = True


def minimal_polynomial(g: Graph) -> MinimalPolynomial:
    _, mp = reduced_powers(g, max(g.n, 1) + 1)
    if mp is None:
        raise ArithmeticError("minimal polynomial certification failed")
    return mp


def closed_walk_counts(g: Graph, upto: int) -> list:
    """[tr(A^k) for k in 0..upto] as exact integers."""
    return [int(sum(int(x) for x in np.diag(m))) for m in walk_powers(g, upto + 1)]
