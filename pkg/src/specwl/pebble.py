"""Exact solver for the two-pebble component game on a base graph.

Spoiler first puts pebble u on a vertex.  Each round Spoiler puts pebble v on
a vertex, then u moves to v and v leaves the board.  Duplicator keeps an
odd-size set Q of edge components (edges grouped by paths avoiding pebbled
vertices):

* a placement that splits component C into parts replaces C by an odd subset
  of the parts when C is in Q, and otherwise adds an even subset of them;
* a removal merges the components at the freed vertex, and the merged
  component is in Q iff an odd number of the merged parts were.

Spoiler wins a round when, right after placing v, Q holds a component that is
a simple path whose two ends are the pebbled vertices u and v.  The value is
the number of rounds completed before the winning one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidInputError, check_cap
from .furer import connected_components_after_separation
from .graph import Graph

State = tuple  # (u, Q) with Q a frozenset of frozenset edge sets


def _odd_subsets(items: list) -> list:
    return [frozenset(c) for r in range(1, len(items) + 1, 2) for c in itertools.combinations(items, r)]


def _even_subsets(items: list) -> list:
    return [frozenset(c) for r in range(0, len(items) + 1, 2) for c in itertools.combinations(items, r)]


def _is_path_between(comp: frozenset, a: int, b: int) -> bool:
    deg: dict = {}
    for x, y in comp:
        deg[x] = deg.get(x, 0) + 1
        deg[y] = deg.get(y, 0) + 1
    if len(comp) != len(deg) - 1 or any(d > 2 for d in deg.values()):
        return False
    ends = {x for x, d in deg.items() if d == 1}
    if ends != {a, b}:
        return False
    # connected: with |E| = |V| - 1 and max degree 2, a single component is a path
    adj: dict = {}
    for x, y in comp:
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)
    seen, stack = {a}, [a]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(deg)


@dataclass(frozen=True)
class Transition:
    reply: frozenset  # Q right after placing v
    win: bool
    next_state: State | None  # (v, Q after removing u) when not a win


class SimplifiedGame:
    def __init__(self, base: Graph):
        check_cap("pebble", base.n)
        if base.n < 2 or not base.is_connected():
            raise InvalidInputError("the game needs a connected base with at least 2 vertices")
        self.base = base
        self.all_edges = frozenset(base.edges)
        self._cc = lru_cache(maxsize=None)(self._components)
        self._values: dict | None = None

    def _components(self, pebbled: frozenset) -> tuple:
        return tuple(connected_components_after_separation(self.base, pebbled))

    def _comp_at(self, pebbled: frozenset, x: int) -> list:
        return [c for c in self._cc(pebbled) if any(x in e for e in c)]

    def _split_replies(self, q: frozenset, before: frozenset, after: frozenset, v: int) -> list:
        """Duplicator's options when pebble v is added to `before`, giving `after`."""
        old = self._comp_at(before, v)
        if len(old) != 1:  # v already pebbled: components at v are unchanged
            return [q]
        c = old[0]
        parts = [p for p in self._cc(after) if p <= c]
        if parts == [c]:
            return [q]
        if c in q:
            return [(q - {c}) | s for s in _odd_subsets(parts)]
        return [q | s for s in _even_subsets(parts)]

    def _merge(self, q: frozenset, before: frozenset, x: int) -> frozenset:
        """Q after the pebble on x is removed from `before`."""
        parts = self._comp_at(before, x)
        inside = sum(1 for p in parts if p in q)
        out = q - frozenset(parts)
        if inside % 2:
            out = out | {frozenset().union(*parts)}
        return out

    def initial_states(self, u: int) -> list:
        return [(u, q) for q in self._split_replies(frozenset([self.all_edges]), frozenset(), frozenset([u]), u)]

    def transitions(self, state: State, v: int) -> list:
        u, q = state
        assert len(q) % 2 == 1, "duplicator parity violated"
        pair = frozenset([u, v])
        out = []
        for reply in self._split_replies(q, frozenset([u]), pair, v):
            assert len(reply) % 2 == 1, "duplicator parity violated"
            if any(_is_path_between(c, u, v) for c in reply):
                out.append(Transition(reply, True, None))
            else:
                out.append(Transition(reply, False, (v, self._merge(reply, pair, u))))
        return out

    def moves(self, state: State) -> list:
        return [v for v in range(self.base.n) if v != state[0]]

    def reachable(self) -> set:
        seen: set = set()
        stack = [s for u in range(self.base.n) for s in self.initial_states(u)]
        while stack:
            s = stack.pop()
            if s in seen:
                continue
            seen.add(s)
            for v in self.moves(s):
                for t in self.transitions(s, v):
                    if t.next_state is not None and t.next_state not in seen:
                        stack.append(t.next_state)
        return seen

    def values(self) -> dict:
        """Rounds-to-win per state by layered attractor; states absent from the map are lost for Spoiler."""
        if self._values is not None:
            return self._values
        states = self.reachable()
        trans = {s: {v: self.transitions(s, v) for v in self.moves(s)} for s in states}
        val: dict = {}
        layer = 0
        while True:
            new = {}
            for s in states:
                if s in val:
                    continue
                for v, ts in trans[s].items():
                    if all(t.win or (layer > 0 and val.get(t.next_state, layer) < layer) for t in ts):
                        new[s] = layer
                        break
            if not new:
                break
            val.update(new)
            layer += 1
        self._values = val
        return val

    def state_value(self, s: State) -> int | None:
        return self.values().get(s)

    def value(self) -> int | None:
        """min over first placements of max over Duplicator's initial choice."""
        vals = self.values()
        best = None
        for u in range(self.base.n):
            worst = 0
            for s in self.initial_states(u):
                if s not in vals:
                    worst = None
                    break
                worst = max(worst, vals[s])
            if worst is not None and (best is None or worst < best):
                best = worst
        return best


@dataclass(frozen=True)
class GameResult:
    spoiler_wins_in: int | None  # None = Duplicator survives forever

    @property
    def duplicator_survives(self) -> bool:
        return self.spoiler_wins_in is None

    def to_json(self) -> dict:
        if self.duplicator_survives:
            return {"result": "duplicator_survives"}
        return {"result": "spoiler_wins", "spoiler_wins_in": self.spoiler_wins_in}


def solve_simplified_game(base: Graph, max_steps: int | None = None) -> GameResult:
    """Minimal number of completed rounds Spoiler needs, if at most max_steps."""
    val = SimplifiedGame(base).value()
    if val is None or (max_steps is not None and val > max_steps):
        return GameResult(None)
    return GameResult(val)


# ---------------------------------------------------------------- strategy trees

def _union(q: frozenset) -> frozenset:
    return frozenset().union(*q) if q else frozenset()


def _fmt_q(q: frozenset) -> list:
    return sorted(sorted(list(e) for e in c) for c in q)


def game_trace(base: Graph) -> dict:
    """Spoiler's winning strategy as a nested dict.

    Among optimal moves the solver prefers those after which the edges held by
    Duplicator strictly shrink; every node records whether that held.
    """
    game = SimplifiedGame(base)
    total = game.value()
    if total is None:
        raise InvalidInputError("Spoiler has no winning strategy on this base")
    vals = game.values()

    def node(s: State) -> dict:
        u, q = s
        best = None
        for v in game.moves(s):
            ts = game.transitions(s, v)
            if not all(t.win or vals.get(t.next_state, 1 << 30) < vals[s] for t in ts):
                continue
            contracted = all(t.win or _union(t.next_state[1]) < _union(q) for t in ts)
            if best is None or (contracted and not best[2]):
                best = (v, ts, contracted)
            if contracted:
                break
        v, ts, contracted = best
        return {
            "pebble": u,
            "selection": _fmt_q(q),
            "rounds_left": vals[s],
            "place": v,
            "strictly_contracted": contracted,
            "replies": [
                {"selection": _fmt_q(t.reply), "win": True}
                if t.win
                else {"selection": _fmt_q(t.reply), "win": False, "then": node(t.next_state)}
                for t in ts
            ],
        }

    start = next(
        u for u in range(base.n)
        if all(vals.get(s) is not None and vals[s] <= total for s in game.initial_states(u))
    )
    return {
        "spoiler_wins_in": total,
        "first_pebble": start,
        "openings": [node(s) for s in game.initial_states(start)],
    }


def strategy_is_sound(tree: dict) -> bool:
    """Every branch ends in a win within the reported rounds, and every node contracts."""

    def check(nd: dict, budget: int) -> bool:
        if budget < 0 or not nd["strictly_contracted"]:
            return False
        return all(r["win"] or check(r["then"], budget - 1) for r in nd["replies"])

    return all(check(nd, tree["spoiler_wins_in"]) for nd in tree["openings"])
