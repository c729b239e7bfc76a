from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import to_nx
from specwl.corpus import atlas
from specwl.errors import CapExceededError, InvalidInputError
from specwl.graph import Graph, disjoint_union, from_edges, make_family
from specwl.ptree import (
    Skeleton,
    brute_force_depth,
    enumerate_parallel_trees,
    find_skeleton,
    is_parallel_edge,
    parallel_tree_depth,
    verify_skeleton,
)

K4_MINUS_E = from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


@pytest.mark.parametrize(
    "g, depth",
    [
        (Graph(1), 0),
        (make_family("path", [2]), 1),
        (make_family("path", [7]), 1),
        (make_family("star", [4]), 1),
        (make_family("cycle", [5]), 1),
        (make_family("theta", [1, 2, 3]), 1),
        (K4_MINUS_E, 1),
        (make_family("dumbbell", [3, 3]), 2),
        (make_family("doubled_path", [1]), 2),
        (make_family("doubled_path", [2]), 3),
        (make_family("doubled_path", [3]), 4),
        (make_family("clique", [4]), None),
        (make_family("wheel", [5]), None),
    ],
)
def test_known_depths(g, depth):
    assert parallel_tree_depth(g) == depth


def test_parallel_edge_endpoints():
    assert is_parallel_edge(K4_MINUS_E) == (0, 1)
    assert is_parallel_edge(make_family("theta", [2, 3, 4])) == (0, 1)
    assert is_parallel_edge(make_family("clique", [4])) is None
    assert is_parallel_edge(make_family("star", [3])) is None
    u, v = is_parallel_edge(make_family("cycle", [6]))
    assert {u, v} <= set(range(6)) and u != v


def _suppressed_radius(t: Graph) -> int:
    """Radius of a tree after splicing out its degree-2 vertices."""
    g = to_nx(t)
    for v in [v for v in list(g) if g.degree(v) == 2]:
        a, b = list(g.neighbors(v))
        g.remove_node(v)
        g.add_edge(a, b)
    return nx.radius(g) if len(g) > 1 else 0


@given(st.integers(2, 20), st.integers(0, 2 ** 32 - 1))
def test_trees_use_suppressed_radius(n, seed):
    t = nx.random_labeled_tree(n, seed=seed)
    g = from_edges(n, t.edges())
    assert parallel_tree_depth(g) == _suppressed_radius(g)


def test_recognition_matches_brute_force(connected_atlas):
    for g in [Graph(1)] + connected_atlas:
        assert parallel_tree_depth(g) == brute_force_depth(g), g


def test_atlas_depth_distribution(connected_atlas):
    counts: dict = {}
    for g in [Graph(1)] + connected_atlas:
        d = parallel_tree_depth(g)
        counts[d] = counts.get(d, 0) + 1
    assert counts == {0: 1, 1: 103, 2: 52, None: 840}


def test_skeletons_verify(connected_atlas):
    for g in connected_atlas:
        sk = find_skeleton(g)
        if sk is not None:
            assert verify_skeleton(g, sk)
            assert sk.depth == parallel_tree_depth(g)


def test_broken_skeleton_rejected():
    g = make_family("theta", [2, 2])
    sk = find_skeleton(g)
    assert verify_skeleton(g, sk)
    dropped = Skeleton(sk.tree, sk.root, sk.beta, {e: ps[:1] for e, ps in sk.gamma.items()})
    assert not verify_skeleton(g, dropped)
    assert not verify_skeleton(make_family("cycle", [4]), sk)


def test_enumeration_matches_recognition(connected_atlas):
    pool = [Graph(1)] + connected_atlas
    for m in range(1, 8):
        expected = sum(1 for g in pool if g.n <= m and parallel_tree_depth(g) is not None)
        assert len(enumerate_parallel_trees(m)) == expected
    assert [len(enumerate_parallel_trees(m)) for m in range(1, 8)] == [1, 2, 4, 9, 22, 57, 156]


def test_enumeration_eight_vertices():
    out = enumerate_parallel_trees(8)
    assert len(out) == 450
    assert all(nx.is_connected(to_nx(g)) for g in out)


def test_enumeration_depth_filter_and_width():
    out = enumerate_parallel_trees(7, max_depth=1)
    assert len(out) == 104
    assert all(parallel_tree_depth(g) <= 1 for g in out)
    for g in enumerate_parallel_trees(7):
        width, _ = nx.algorithms.approximation.treewidth_min_fill_in(to_nx(g))
        assert width <= 2


def test_errors():
    with pytest.raises(InvalidInputError):
        parallel_tree_depth(disjoint_union(Graph(1), Graph(1)))
    with pytest.raises(CapExceededError):
        parallel_tree_depth(make_family("path", [33]))
    with pytest.raises(CapExceededError):
        enumerate_parallel_trees(9)
    with pytest.raises(InvalidInputError):
        enumerate_parallel_trees(-1)
