from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from conftest import graphs, to_nx
from specwl.errors import CapExceededError, InvalidInputError
from specwl.furer import furer_pair
from specwl.graph import Graph, are_isomorphic, from_edges, make_family
from specwl.homcount import (
    TreeDecomposition,
    automorphism_count,
    counting_power_check,
    hom_brute,
    hom_count,
    hom_tw2,
    independent_partitions,
    mobius,
    skeleton_decomposition,
    spasm,
    spasm_basis,
    sub_brute,
    sub_via_hom,
    treewidth_at_most_2,
    tw2_decomposition,
    validate_decomposition,
)
from specwl.ptree import enumerate_parallel_trees, parallel_tree_depth


def naive_hom(f, g):
    """Count maps V(f) -> V(g) preserving edges by trying all of them."""
    return sum(
        all(g.has_edge(phi[u], phi[v]) for u, v in f.edge_list)
        for phi in itertools.product(range(g.n), repeat=f.n)
    )


def monomorphisms(f, g):
    return sum(1 for _ in GraphMatcher(to_nx(g), to_nx(f)).subgraph_monomorphisms_iter())


PTREES = [p for p in enumerate_parallel_trees(6) if p.n >= 1]


# ---------------------------------------------------------------- examples

def test_triangles_and_squares_in_k4():
    k4 = make_family("clique", [4])
    assert sub_via_hom(make_family("cycle", [3]), k4) == 4
    assert sub_via_hom(make_family("cycle", [4]), k4) == 3
    assert sub_brute(make_family("cycle", [4]), k4) == 3


@pytest.mark.parametrize("length", range(3, 9))
def test_cycle_hom_is_closed_walk_count(length):
    rng = np.random.default_rng(length)
    from specwl.corpus import random_graph

    g = random_graph(rng, 7, 0.5)
    a = g.matrix.astype(object)
    expected = np.trace(np.linalg.matrix_power(a, length))
    assert hom_tw2(make_family("cycle", [length]), g) == expected
    assert hom_brute(make_family("cycle", [length]), g) == expected


def test_automorphism_counts():
    for n in range(3, 8):
        assert automorphism_count(make_family("cycle", [n])) == 2 * n
    for n in range(1, 6):
        assert automorphism_count(make_family("clique", [n])) == math.factorial(n)


def test_empty_pattern_has_one_map():
    assert hom_brute(Graph(0), make_family("path", [3])) == 1
    assert hom_tw2(Graph(0), make_family("path", [3])) == 1


def test_k4_has_no_width_two_decomposition():
    assert tw2_decomposition(make_family("clique", [4])) is None
    assert not treewidth_at_most_2(make_family("clique", [4]))
    with pytest.raises(InvalidInputError):
        hom_tw2(make_family("clique", [4]), make_family("clique", [5]))
    # hom(K4, K5) = 5 * 4 * 3 * 2
    assert hom_count(make_family("clique", [4]), make_family("clique", [5])) == 120


def test_bad_decompositions_rejected():
    p3 = make_family("path", [3])
    good = TreeDecomposition((frozenset({0, 1}), frozenset({1, 2})), ((0, 1),))
    validate_decomposition(p3, good)
    bad = [
        TreeDecomposition((frozenset({0, 1}),), ()),
        TreeDecomposition((frozenset({0, 1}), frozenset({2})), ((0, 1),)),
        TreeDecomposition((frozenset({0, 1}), frozenset({1, 2})), ()),
        TreeDecomposition((frozenset({0, 1}), frozenset({2}), frozenset({1, 2})), ((0, 1), (1, 2))),
    ]
    for td in bad:
        with pytest.raises(InvalidInputError):
            validate_decomposition(p3, td)


def test_spasm_of_c8_contains_k4():
    members = spasm(make_family("cycle", [8]))
    assert any(are_isomorphic(q, make_family("clique", [4])) for q in members)
    assert not any(are_isomorphic(q, make_family("clique", [5])) for q in members)


def test_mobius_values():
    assert mobius([[0], [1], [2]]) == 1
    assert mobius([[0, 1], [2]]) == -1
    assert mobius([[0, 1, 2]]) == 2
    assert mobius([[0, 1, 2, 3]]) == -6
    assert mobius([[0, 1], [2, 3]]) == 1


def test_independent_partitions_of_edgeless_graph_are_bell_numbers():
    for n, bell in enumerate([1, 1, 2, 5, 15, 52, 203]):
        assert sum(1 for _ in independent_partitions(Graph(n))) == bell


def test_counting_power_examples():
    c8 = counting_power_check(make_family("cycle", [8]))
    assert not c8.countable and are_isomorphic(c8.witness, make_family("clique", [4]))
    assert c8.witness_depth is None
    c7 = counting_power_check(make_family("cycle", [7]), 1)
    assert not c7.countable and c7.witness.n == 5 and c7.witness_depth == 2
    assert counting_power_check(make_family("cycle", [6]), 1).countable
    assert counting_power_check(make_family("path", [7])).countable
    assert counting_power_check(make_family("cycle", [7])).countable


def test_doubled_path_hom_separates_its_furer_pair():
    base = make_family("doubled_path", [1])
    g, h = furer_pair(base)
    assert (hom_tw2(base, g), hom_tw2(base, h)) == (11553472, 11553344)


def test_double_star_depth_one_certificate():
    pattern = from_edges(8, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 6), (1, 5), (1, 7), (4, 5), (6, 7)])
    assert parallel_tree_depth(pattern) == 1
    g, h = furer_pair(from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]))

    def closed_form(x):
        # hub 0 reaches vertex 1 by one edge and two 3-paths, and carries two leaves
        a = x.matrix.astype(object)
        a3 = a @ a @ a
        row = (a * a3 * a3).sum(axis=1)
        return int(sum(row[u] * x.degrees[u] ** 2 for u in range(x.n)))

    for x, want in ((g, 9040), (h, 9032)):
        assert hom_brute(pattern, x) == want
        assert hom_tw2(pattern, x) == want
        assert closed_form(x) == want


def test_hom_brute_cap():
    with pytest.raises(CapExceededError):
        hom_brute(make_family("path", [9]), make_family("cycle", [20]), budget=10 ** 6)
    # small hosts stay within budget even for larger patterns
    assert hom_brute(make_family("path", [9]), make_family("path", [2])) == 2


def test_spasm_cap():
    with pytest.raises(CapExceededError):
        spasm(make_family("path", [9]))


# ---------------------------------------------------------------- properties

@given(graphs(max_n=4), graphs(max_n=5))
def test_brute_matches_naive_oracle(f, g):
    assert hom_brute(f, g) == naive_hom(f, g)


@given(st.sampled_from(PTREES), graphs(min_n=1, max_n=7))
def test_tw2_matches_brute_on_parallel_trees(f, g):
    assert hom_tw2(f, g) == hom_brute(f, g)
    assert hom_tw2(f, g, skeleton_decomposition(f)) == hom_brute(f, g)


@given(graphs(min_n=1, max_n=6), graphs(min_n=1, max_n=6))
def test_tw2_matches_brute_whenever_defined(f, g):
    td = tw2_decomposition(f)
    if td is not None:
        validate_decomposition(f, td)
        assert td.width <= 2
        assert hom_tw2(f, g, td) == hom_brute(f, g)


@settings(max_examples=40)
@given(graphs(min_n=1, max_n=5), graphs(max_n=7))
def test_spasm_route_matches_enumeration(f, g):
    want = sub_brute(f, g)
    assert sub_via_hom(f, g) == want
    assert monomorphisms(f, g) == want * automorphism_count(f)


@settings(max_examples=30)
@given(graphs(min_n=1, max_n=6))
def test_spasm_members_are_images(f):
    basis = spasm_basis(f)
    assert basis.aut_count == automorphism_count(f)
    for q, _ in basis.entries:
        assert q.n <= f.n and q.m <= f.m
        assert hom_brute(f, q) > 0
    assert any(are_isomorphic(q, f) for q in basis.graphs)

