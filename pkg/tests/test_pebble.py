from __future__ import annotations

import pytest

from specwl.errors import CapExceededError, InvalidInputError
from specwl.furer import furer_pair
from specwl.graph import Graph, from_edges, make_family
from specwl.pebble import SimplifiedGame, Transition, game_trace, solve_simplified_game, strategy_is_sound
from specwl.ptree import parallel_tree_depth
from specwl.refine import compare_graphs


@pytest.mark.parametrize(
    "base, rounds",
    [
        (make_family("path", [2]), 0),
        (make_family("cycle", [5]), 0),
        (make_family("theta", [2, 3, 3]), 0),
        (make_family("dumbbell", [3, 3]), 1),
        (make_family("doubled_path", [1]), 1),
        (make_family("doubled_path", [2]), 2),
        (make_family("doubled_path", [3]), 3),
        (make_family("clique", [4]), None),
        (make_family("clique", [5]), None),
    ],
)
def test_known_values(base, rounds):
    assert solve_simplified_game(base).spoiler_wins_in == rounds


def test_state_space_is_small():
    assert len(SimplifiedGame(make_family("doubled_path", [2])).reachable()) == 20


def test_step_bound():
    base = make_family("doubled_path", [2])
    assert solve_simplified_game(base, 2).spoiler_wins_in == 2
    assert solve_simplified_game(base, 1).duplicator_survives
    assert solve_simplified_game(make_family("clique", [4]), 50).to_json() == {"result": "duplicator_survives"}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_strategy_traces_are_sound(k):
    tree = game_trace(make_family("doubled_path", [k]))
    assert tree["spoiler_wins_in"] == k
    assert strategy_is_sound(tree)


def test_trace_needs_a_win():
    with pytest.raises(InvalidInputError):
        game_trace(make_family("clique", [4]))


def test_errors():
    with pytest.raises(InvalidInputError):
        SimplifiedGame(Graph(1))
    with pytest.raises(CapExceededError):
        SimplifiedGame(make_family("path", [25]))


# ---------------------------------------------------------------- agreement over all small bases

@pytest.fixture(scope="session")
def verdicts(connected_atlas):
    out = []
    for f in connected_atlas:
        g, h = furer_pair(f)
        out.append((
            f,
            solve_simplified_game(f).spoiler_wins_in,
            parallel_tree_depth(f),
            compare_graphs(g, h, "spec").distinguished_at,
        ))
    return out


def test_game_value_is_depth_minus_one(verdicts):
    for f, game, depth, _ in verdicts:
        assert (None if game is None else game + 1) == depth, f


def test_refinement_agrees_without_leaves(verdicts):
    for f, _, depth, first in verdicts:
        if depth is None or 1 not in f.degrees:
            assert first == depth, f


def test_refinement_agrees_on_shallow_bases(verdicts):
    for f, _, depth, first in verdicts:
        if depth is not None and depth <= 1:
            assert first == depth, f


class LeafAnchoredGame(SimplifiedGame):
    """Variant where a held path may also end at a leaf of the base, as long as one end is pebbled."""

    def transitions(self, state, v):
        u, q = state
        leaves = {x for x in range(self.base.n) if self.base.degrees[x] == 1}
        pair = frozenset([u, v])
        out = []
        for reply in self._split_replies(q, frozenset([u]), pair, v):
            if any(_anchored_path(c, {u, v}, leaves) for c in reply):
                out.append(Transition(reply, True, None))
            else:
                out.append(Transition(reply, False, (v, self._merge(reply, pair, u))))
        return out


def _anchored_path(comp, pebbles, leaves) -> bool:
    deg: dict = {}
    for x, y in comp:
        deg[x] = deg.get(x, 0) + 1
        deg[y] = deg.get(y, 0) + 1
    if len(comp) != len(deg) - 1 or any(d > 2 for d in deg.values()):
        return False
    ends = {x for x, d in deg.items() if d == 1}
    return ends <= pebbles | leaves and bool(ends & pebbles)


def test_leaf_anchored_game_tracks_refinement(verdicts):
    """Pendant vertices let refinement separate some pairs one iteration early; this variant predicts exactly when."""
    early = 0
    for f, _, depth, first in verdicts:
        val = LeafAnchoredGame(f).value()
        assert (None if val is None else val + 1) == first, f
        early += first != depth
    assert early == 45


def test_double_star_separates_early():
    f = from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)])
    g, h = furer_pair(f)
    assert parallel_tree_depth(f) == 2
    assert solve_simplified_game(f).spoiler_wins_in == 1
    assert compare_graphs(g, h, "spec").distinguished_at == 1
    assert compare_graphs(g, h, "spec-float").distinguished_at == 1
    assert compare_graphs(g, h, "spec", reduce=False).distinguished_at == 1
