from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import graphs, to_nx
from specwl.errors import InvalidInputError
from specwl.furer import furer_pair
from specwl.graph import are_isomorphic, from_edges, make_family
from specwl.sympower import colex_rank, colex_subsets, symmetric_power, sympower_encoding_check


def naive_power(g, k):
    """Edge set of the k-th symmetric power, keyed by subsets."""
    subs = [frozenset(s) for s in itertools.combinations(range(g.n), k)]
    return {
        frozenset((a, b))
        for a, b in itertools.combinations(subs, 2)
        if len(a ^ b) == 2 and g.has_edge(*sorted(a ^ b))
    }


def test_p3_second_power_is_a_path():
    sp = symmetric_power(make_family("path", [3]), 2)
    assert sp.subsets == ((0, 1), (0, 2), (1, 2))
    assert sp.graph == from_edges(3, [(0, 1), (1, 2)])


def test_colex_order_and_rank():
    subs = colex_subsets(5, 3)
    assert subs[:4] == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert [colex_rank(s) for s in subs] == list(range(math.comb(5, 3)))


@given(graphs(min_n=1, max_n=8))
def test_first_power_is_the_graph(g):
    sp = symmetric_power(g, 1)
    assert sp.graph == g
    assert are_isomorphic(sp.graph, g)


@given(graphs(min_n=2, max_n=7), st.integers(1, 4))
def test_power_matches_naive_construction(g, k):
    k = min(k, g.n)
    sp = symmetric_power(g, k)
    assert sp.graph.n == math.comb(g.n, k)
    got = {frozenset((frozenset(sp.subsets[i]), frozenset(sp.subsets[j]))) for i, j in sp.graph.edge_list}
    assert got == naive_power(g, k)


@given(graphs(min_n=2, max_n=7), st.integers(1, 4))
def test_degree_is_edge_boundary(g, k):
    k = min(k, g.n)
    sp = symmetric_power(g, k)
    for i, s in enumerate(sp.subsets):
        boundary = sum(1 for u, v in g.edge_list if (u in s) != (v in s))
        assert sp.graph.degrees[i] == boundary


@given(graphs(min_n=2, max_n=6), st.randoms(use_true_random=False))
def test_power_respects_isomorphism(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    a, b = symmetric_power(g, 2).graph, symmetric_power(g.relabel(perm), 2).graph
    assert nx.is_isomorphic(to_nx(a), to_nx(b))


def test_encoding_check_on_k4_pair():
    g, h = furer_pair(make_family("clique", [4]))
    first = sympower_encoding_check(g, h, 1)
    assert first.local_indistinguishable and first.spectral_indistinguishable and first.holds
    second = sympower_encoding_check(g, h, 2)
    assert not second.local_indistinguishable and not second.spectral_indistinguishable and second.holds


def test_encoding_check_on_separated_pair():
    rep = sympower_encoding_check(make_family("cycle", [6]), make_family("path", [6]), 1)
    assert not rep.local_indistinguishable and rep.holds


def test_encoding_check_rejects_large_k():
    with pytest.raises(InvalidInputError):
        sympower_encoding_check(make_family("path", [4]), make_family("path", [4]), 3)
    with pytest.raises(InvalidInputError):
        symmetric_power(make_family("path", [3]), 4)
