from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

from conftest import graphs
from specwl.errors import InvalidInputError
from specwl.graph import make_family
from specwl.walks import closed_walk_counts, minimal_polynomial, reduced_powers, walk_powers, walk_profiles


def _walks_brute(g, u, v, k):
    """Count k-walks by explicit enumeration."""
    if k == 0:
        return int(u == v)
    return sum(_walks_brute(g, w, v, k - 1) for w in g.adj[u])


def test_triangle_closed_two_walks():
    t = walk_profiles(make_family("clique", [3]), 3)
    assert all(t.profile(u, u)[2] == 2 for u in range(3))


def test_c4_odd_walks_vanish_at_even_distance():
    t = walk_profiles(make_family("cycle", [4]), 4)
    for u in range(4):
        for v in range(4):
            if (u - v) % 2 == 0:
                assert t.profile(u, v)[3] == 0


@given(graphs(max_n=6))
def test_profiles_match_enumeration(g):
    t = walk_profiles(g, 4)
    for u in range(g.n):
        for v in range(g.n):
            assert t.profile(u, v) == tuple(_walks_brute(g, u, v, k) for k in range(4))


@given(graphs(min_n=1, max_n=9))
def test_profile_invariants(g):
    t = walk_profiles(g, g.n)
    for u in range(g.n):
        for v in range(g.n):
            p = t.profile(u, v)
            assert p[0] == int(u == v)
            if len(p) > 1 and u != v:
                assert p[1] == int(g.has_edge(u, v))
            assert all(x <= max(g.n - 1, 1) ** k for k, x in enumerate(p))


def test_large_powers_stay_exact():
    g = make_family("clique", [24])
    mats = walk_powers(g, 20)
    # (K_n)^k diagonal = ((n-1)^k + (n-1)(-1)^k) / n
    k, n = 19, 24
    assert int(mats[k][0, 0]) == ((n - 1) ** k + (n - 1) * (-1) ** k) // n
    assert int(mats[k][0, 0]) > 2 ** 63


@given(graphs(min_n=1, max_n=10))
def test_minimal_polynomial_degree_counts_distinct_eigenvalues(g):
    mp = minimal_polynomial(g)
    vals = np.linalg.eigvalsh(g.matrix.astype(float))
    distinct = 1 + int(np.sum(np.diff(np.sort(vals)) > 1e-7))
    assert mp.degree == distinct
    mats = walk_powers(g, mp.degree + 1)
    acc = sum(c * m.astype(object) for c, m in zip(mp.coeffs, mats))
    assert np.array_equal(acc, mats[mp.degree].astype(object))


@given(graphs(min_n=1, max_n=9))
def test_reduced_powers_prefix(g):
    full = walk_powers(g, g.n)
    mats, mp = reduced_powers(g, g.n)
    assert all(np.array_equal(a, b) for a, b in zip(mats, full))
    if mp is not None:
        assert len(mats) == mp.degree <= g.n


@given(graphs(min_n=1, max_n=9))
def test_closed_walks_are_power_sums(g):
    vals = np.linalg.eigvalsh(g.matrix.astype(float))
    cw = closed_walk_counts(g, g.n)
    for k, c in enumerate(cw):
        assert abs(c - np.sum(vals ** k)) < 1e-6 * max(1, abs(c))


def test_rejects_zero_length():
    with pytest.raises(InvalidInputError):
        walk_powers(make_family("path", [2]), 0)
