"""Acceptance catalog A1-A11: each check runs its corpus and returns one CaseResult."""
from __future__ import annotations

import fnmatch
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import corpus
from .furer import furer_pair, furer_size
from .graph import Graph, are_isomorphic, from_edges, make_family
from .homcount import (
    counting_power_check,
    hom_brute,
    hom_tw2,
    spasm,
    spasm_basis,
    sub_brute,
    sub_via_hom,
    treewidth_at_most_2,
    tw2_decomposition,
)
from .pebble import solve_simplified_game
from .ptree import enumerate_parallel_trees, parallel_tree_depth
from .refine import compare_graphs, same_partition, spectral_refine, spectral_refine_float
from .sympower import symmetric_power, sympower_encoding_check

MAX_EXAMPLES = 10


@dataclass
class CaseResult:
    case_id: str
    claim: str
    inputs: dict
    expected: object
    observed: object
    passed: bool
    runtime_ms: float = 0.0

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "case_id": self.case_id,
            "claim": self.claim,
            "inputs": self.inputs,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
        }
        if timings:
            out["runtime_ms"] = round(self.runtime_ms, 1)
        return out


@dataclass
class SuiteReport:
    seed: int
    cases: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def summary(self) -> dict:
        ok = sum(c.passed for c in self.cases)
        return {"total": len(self.cases), "passed": ok, "failed": len(self.cases) - ok}

    def to_json(self, timings: bool = False) -> dict:
        return {"seed": self.seed, "summary": self.summary(), "cases": [c.to_json(timings) for c in self.cases]}

    def table(self) -> str:
        lines = [f"{'case':<5} {'result':<6} {'ms':>10}  claim"]
        for c in self.cases:
            lines.append(f"{c.case_id:<5} {'PASS' if c.passed else 'FAIL':<6} {c.runtime_ms:>10.0f}  {c.claim}")
        s = self.summary()
        lines.append(f"{s['passed']}/{s['total']} passed")
        return "\n".join(lines)


def _g(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edge_list]}


def _rng(seed: int, salt: int) -> np.random.Generator:
    return np.random.default_rng([seed, salt])


# ---------------------------------------------------------------- A1

def check_a1(seed: int) -> CaseResult:
    rng = _rng(seed, 1)
    bad = []
    for i in range(100):
        n = int(rng.integers(2, 11))
        g = corpus.random_connected(rng, n, float(rng.uniform(0.1, 0.6)))
        exact = spectral_refine(g, n)
        approx = spectral_refine_float(g, n)
        same = len(exact) == len(approx) and all(
            same_partition(a, b) for a, b in zip(exact.partitions, approx.partitions)
        )
        if not same:
            bad.append({"index": i, "graph": _g(g)})
    return CaseResult(
        "A1", "walk-profile and eigenprojection refinements give identical partitions",
        {"graphs": 100, "max_n": 10, "iterations": "n"}, {"mismatches": 0},
        {"mismatches": len(bad), "examples": bad[:MAX_EXAMPLES]}, not bad,
    )


# ---------------------------------------------------------------- A2

def _a2_pairs(seed: int) -> list:
    pairs = list(corpus.hierarchy_catalog(seed))
    for k in (2, 3):
        pairs.append(corpus.furer_case(f"doubled_path{k}", make_family("doubled_path", [k])))
    return pairs


def check_a2(seed: int) -> CaseResult:
    patterns = [(f, parallel_tree_depth(f), tw2_decomposition(f)) for f in enumerate_parallel_trees(7)]
    bad, checked = [], []
    for pair in _a2_pairs(seed):
        cache: dict = {}
        for d in (1, 2, 3):
            if compare_graphs(pair.g, pair.h, "spec", d).distinguished:
                break
            n_pat = 0
            for idx, (f, depth, td) in enumerate(patterns):
                if depth > d:
                    continue
                if idx not in cache:
                    cache[idx] = (hom_tw2(f, pair.g, td), hom_tw2(f, pair.h, td))
                a, b = cache[idx]
                n_pat += 1
                if a != b:
                    bad.append({"pair": pair.pair_id, "d": d, "pattern": _g(f), "hom": [a, b]})
            checked.append({"pair": pair.pair_id, "d": d, "patterns": n_pat})
    must = {("furer:doubled_path2", 2), ("furer:doubled_path3", 3), ("furer:C~", 3)}
    seen = {(c["pair"], c["d"]) for c in checked}
    ok = not bad and must <= seen
    return CaseResult(
        "A2", "equal spectral invariant at depth d fixes hom counts of parallel trees of depth <= d",
        {"patterns": len(patterns), "max_pattern_vertices": 7, "d": [1, 2, 3]},
        {"violations": 0, "includes": sorted(f"{p}@{d}" for p, d in must)},
        {"violations": len(bad), "checked_pairs": len(checked), "examples": bad[:MAX_EXAMPLES]}, ok,
    )


# ---------------------------------------------------------------- A3

def check_a3(seed: int) -> CaseResult:
    bad, total = [], 0
    for f in corpus.atlas(2, 6, connected=True):
        if parallel_tree_depth(f) is not None:
            continue
        total += 1
        g, h = furer_pair(f)
        v = compare_graphs(g, h, "spec")
        td = tw2_decomposition(f)
        a, b = (hom_tw2(f, g, td), hom_tw2(f, h, td)) if td else (hom_brute(f, g), hom_brute(f, h))
        if v.distinguished or a == b:
            bad.append({"base": _g(f), "verdict": v.to_json(), "hom": [a, b]})
    return CaseResult(
        "A3", "Fürer pairs over non-parallel-tree bases stay spectrally equal while their base counts differ",
        {"bases": "connected, 2..6 vertices, not parallel trees"}, {"violations": 0},
        {"bases": total, "violations": len(bad), "examples": bad[:MAX_EXAMPLES]}, not bad,
    )


# ---------------------------------------------------------------- A4

def check_a4(seed: int) -> CaseResult:
    rows, ok = [], True
    for k in (1, 2, 3):
        base = make_family("doubled_path", [k])
        g, h = furer_pair(base)
        through = compare_graphs(g, h, "spec", k)
        first = compare_graphs(g, h, "spec")
        good = not through.distinguished and first.distinguished_at == k + 1
        ok &= good
        rows.append({"k": k, "vertices": g.n, "depth": parallel_tree_depth(base),
                     "indistinguishable_through_k": not through.distinguished,
                     "distinguished_at": first.distinguished_at})
    sizes = [r["vertices"] for r in rows]
    linear = sizes[1] - sizes[0] == sizes[2] - sizes[1] > 0
    return CaseResult(
        "A4", "doubled paths need exactly k+1 iterations, with linearly growing Fürer graphs",
        {"k": [1, 2, 3]}, {"distinguished_at": [2, 3, 4], "linear_sizes": True},
        {"rows": rows, "linear_sizes": linear}, ok and linear,
    )


# ---------------------------------------------------------------- A5

def _a5_pairs(seed: int) -> list:
    rng = _rng(seed, 5)
    bases = [f for f in corpus.atlas(4, 6, connected=True)
             if furer_size(f) <= 20 and parallel_tree_depth(f) is None]
    bases.sort(key=lambda f: (furer_size(f), f.n, f.m, f.edge_list))
    pairs = []
    for i in range(10):
        g = corpus.random_connected(rng, int(rng.integers(5, 10)))
        pairs.append((f"iso{i}", g, corpus.random_relabel(rng, g)))
    for i in range(40):
        f = bases[i % len(bases)]
        g, h = furer_pair(f)
        pairs.append((f"furer{i}", corpus.random_relabel(rng, g), corpus.random_relabel(rng, h)))
    return pairs


def check_a5(seed: int) -> CaseResult:
    verdicts = {}
    for m in range(3, 8):
        verdicts[f"C{m}"] = counting_power_check(make_family("cycle", [m])).countable
    for m in range(1, 8):
        verdicts[f"P{m}"] = counting_power_check(make_family("path", [m])).countable
    c8 = counting_power_check(make_family("cycle", [8]))
    c8_ok = not c8.countable and c8.witness is not None and are_isomorphic(c8.witness, make_family("clique", [4]))
    bad, precondition = [], []
    cycles = [make_family("cycle", [m]) for m in range(3, 8)]
    for pid, g, h in _a5_pairs(seed):
        if compare_graphs(g, h, "spec").distinguished:
            precondition.append(pid)
            continue
        a = [sub_brute(c, g) for c in cycles]
        b = [sub_brute(c, h) for c in cycles]
        if a != b:
            bad.append({"pair": pid, "counts": [a, b]})
    ok = all(verdicts.values()) and c8_ok and not bad and not precondition
    return CaseResult(
        "A5", "cycles and paths up to 7 are countable, C8 is not (witness K4), and counts agree on equal pairs",
        {"pairs": 50, "cycle_lengths": [3, 7]},
        {"countable": "all", "C8_witness": "K4", "violations": 0},
        {"countable": verdicts, "C8": c8.to_json(), "violations": len(bad),
         "pairs_not_spectrally_equal": precondition, "examples": bad[:MAX_EXAMPLES]}, ok,
    )


# ---------------------------------------------------------------- A6

def check_a6(seed: int) -> CaseResult:
    depths = {}
    for m in range(3, 8):
        depths[f"C{m}"] = [parallel_tree_depth(q) for q in spasm(make_family("cycle", [m]))]
    ok = all(d is not None and d <= 2 for ds in depths.values() for d in ds)
    ok &= all(d <= 1 for d in depths["C6"])
    ok &= 2 in depths["C7"]
    return CaseResult(
        "A6", "spasm members of short cycles are parallel trees of small depth",
        {"cycles": [3, 7]}, {"max_depth": 2, "C6_max_depth": 1, "C7_has_depth_2": True},
        {"max_depth": {k: max(v) for k, v in depths.items()}}, ok,
    )


# ---------------------------------------------------------------- A7

def _charpoly(g: Graph) -> tuple:
    import sympy

    return tuple(sympy.Matrix(g.matrix.tolist()).charpoly().all_coeffs())


def _cycle_homs(g: Graph, upto: int) -> tuple:
    """(hom(K1), hom(K2), hom(C3), ..., hom(C_upto))."""
    return (g.n, 2 * g.m) + tuple(hom_tw2(make_family("cycle", [k]), g) for k in range(3, upto + 1))


def _a7_pairs(seed: int) -> list:
    pairs = []
    for n in range(1, 7):
        groups: dict = {}
        for g in corpus.atlas(n, n):
            groups.setdefault(_charpoly(g), []).append(g)
        for gs in groups.values():
            for g, h in itertools.combinations(gs, 2):
                pairs.append(("cospectral", g, h))
    for f in corpus.atlas(2, 4, connected=True):
        g, h = furer_pair(f)
        pairs.append(("furer", g, h))
    rng = _rng(seed, 7)
    while len(pairs) < 100:
        g = corpus.random_graph(rng, int(rng.integers(3, 11)), float(rng.uniform(0.2, 0.7)))
        pairs.append(("random", g, corpus.random_same_size(rng, g)))
    return pairs[:100]


def check_a7(seed: int) -> CaseResult:
    bad, agree = [], 0
    for kind, g, h in _a7_pairs(seed):
        upto = max(g.n, h.n)
        spectra = g.n == h.n and _charpoly(g) == _charpoly(h)
        homs = _cycle_homs(g, upto) == _cycle_homs(h, upto)
        agree += spectra
        if spectra != homs:
            bad.append({"kind": kind, "g": _g(g), "h": _g(h), "spectra_equal": spectra})
    p3 = make_family("path", [3])
    witness = None
    for n in range(1, 7):
        groups: dict = {}
        for g in corpus.atlas(n, n):
            groups.setdefault(_charpoly(g), []).append(g)
        for gs in groups.values():
            for g, h in itertools.combinations(gs, 2):
                if witness is None and hom_tw2(p3, g) != hom_tw2(p3, h):
                    witness = (g, h)
        if witness:
            break
    obs = {"violations": len(bad), "cospectral_pairs": agree, "examples": bad[:MAX_EXAMPLES]}
    if witness:
        obs["p3_witness"] = {"g": _g(witness[0]), "h": _g(witness[1]),
                             "hom_p3": [hom_tw2(p3, witness[0]), hom_tw2(p3, witness[1])]}
    return CaseResult(
        "A7", "equal spectra iff equal closed-walk (cycle hom) counts; cospectral pairs can differ on P3",
        {"pairs": 100, "witness_search_max_n": 6},
        {"violations": 0, "p3_witness": "found"}, obs, not bad and witness is not None,
    )


# ---------------------------------------------------------------- A8

def check_a8(seed: int) -> CaseResult:
    bad, total = [], 0
    for f in corpus.atlas(2, 7, connected=True):
        total += 1
        game = solve_simplified_game(f).spoiler_wins_in
        depth = parallel_tree_depth(f)
        g, h = furer_pair(f)
        first = compare_graphs(g, h, "spec").distinguished_at
        game_depth = None if game is None else game + 1
        if not game_depth == depth == first:
            bad.append({"base": _g(f), "game_rounds": game, "depth": depth, "distinguished_at": first,
                        "has_leaf": 1 in f.degrees})
    pattern: dict = {}
    for b in bad:
        key = f"depth={b['depth']},game={b['game_rounds']},first={b['distinguished_at']},leaf={b['has_leaf']}"
        pattern[key] = pattern.get(key, 0) + 1
    return CaseResult(
        "A8", "game rounds + 1, parallel-tree depth and first distinguishing iteration coincide",
        {"bases": "connected, 2..7 vertices"}, {"disagreements": 0},
        {"bases": total, "disagreements": len(bad), "pattern": pattern, "examples": bad[:MAX_EXAMPLES]},
        not bad,
    )


# ---------------------------------------------------------------- A9

def _set_partitions(n: int):
    """Restricted growth strings, as lists of blocks."""
    def rec(i, rgs, top):
        if i == n:
            blocks: dict = {}
            for v, b in enumerate(rgs):
                blocks.setdefault(b, []).append(v)
            yield list(blocks.values())
            return
        for b in range(top + 2):
            yield from rec(i + 1, rgs + [b], max(top, b))

    yield from rec(0, [], -1)


def slow_spasm(f: Graph) -> list:
    """(quotient, summed Möbius weight) per isomorphism class, via networkx and all set partitions."""
    import math

    import networkx as nx

    classes: list = []
    for blocks in _set_partitions(f.n):
        where = {v: i for i, b in enumerate(blocks) for v in b}
        if any(where[u] == where[v] for u, v in f.edges):
            continue
        q = nx.Graph()
        q.add_nodes_from(range(len(blocks)))
        q.add_edges_from((where[u], where[v]) for u, v in f.edges)
        w = math.prod((-1) ** (len(b) - 1) * math.factorial(len(b) - 1) for b in blocks)
        for c in classes:
            if nx.is_isomorphic(c[0], q):
                c[1] += w
                break
        else:
            classes.append([q, w])
    return classes


def _random_tw2(rng: np.random.Generator, n: int) -> Graph:
    """Random subgraph of a random 2-tree (connected when possible)."""
    if n < 3:
        return make_family("path", [n])
    edges = {(0, 1), (0, 2), (1, 2)}
    for v in range(3, n):
        a, b = sorted(edges)[int(rng.integers(len(edges)))]
        edges |= {(a, v), (b, v)}
    keep = [e for e in sorted(edges) if rng.random() < 0.7]
    return from_edges(n, keep)


def check_a9(seed: int) -> CaseResult:
    rng = _rng(seed, 9)
    bad = []
    for i in range(100):
        f = _random_tw2(rng, int(rng.integers(1, 8)))
        host = corpus.random_graph(rng, int(rng.integers(1, 9)), float(rng.uniform(0.2, 0.8)))
        if hom_tw2(f, host) != hom_brute(f, host):
            bad.append({"kind": "hom", "pattern": _g(f), "host": _g(host)})
    for i in range(100):
        f = corpus.random_graph(rng, int(rng.integers(1, 7)), float(rng.uniform(0.2, 0.8)))
        host = corpus.random_graph(rng, int(rng.integers(1, 9)), float(rng.uniform(0.2, 0.8)))
        if sub_via_hom(f, host) != sub_brute(f, host):
            bad.append({"kind": "sub", "pattern": _g(f), "host": _g(host)})
    spasm_bad = 0
    import networkx as nx

    patterns = corpus.atlas(1, 6)
    for f in patterns:
        fast = spasm_basis(f).entries
        slow = slow_spasm(f)
        ok = len(fast) == len(slow)
        for q, c in fast:
            nq = nx.Graph()
            nq.add_nodes_from(range(q.n))
            nq.add_edges_from(q.edges)
            hits = [w for s, w in slow if nx.is_isomorphic(s, nq)]
            ok &= hits == [c]
        if not ok:
            spasm_bad += 1
            bad.append({"kind": "spasm", "pattern": _g(f)})
    return CaseResult(
        "A9", "fast counting routines match brute-force and partition-enumeration oracles",
        {"hom_instances": 100, "sub_instances": 100, "spasm_patterns": len(patterns)},
        {"violations": 0}, {"violations": len(bad), "spasm_violations": spasm_bad, "examples": bad[:MAX_EXAMPLES]},
        not bad,
    )


# ---------------------------------------------------------------- A10

CHAIN = ("wl1", "spec", "local2", "fwl2")


def _smallest_fwl2_only_base() -> Graph:
    for f in sorted(corpus.atlas(2, 6, connected=True), key=lambda f: (f.n, f.m, furer_size(f))):
        if treewidth_at_most_2(f) and parallel_tree_depth(f) is None:
            return f
    raise AssertionError("no width-2 non-parallel-tree base up to 6 vertices")


def check_a10(seed: int) -> CaseResult:
    bad, rows = [], []
    for pair in corpus.hierarchy_catalog(seed):
        seen = [compare_graphs(pair.g, pair.h, a).distinguished for a in CHAIN]
        rows.append(seen)
        for weaker, stronger, a, b in zip(seen, seen[1:], CHAIN, CHAIN[1:]):
            if weaker and not stronger:
                bad.append({"pair": pair.pair_id, "weaker": a, "stronger": b})
    wit = {}
    f = corpus.fwl2_only_base()
    g, h = furer_pair(f)
    wit["fwl2_not_spec"] = (
        are_isomorphic(f, _smallest_fwl2_only_base())
        and compare_graphs(g, h, "fwl2").distinguished
        and not compare_graphs(g, h, "spec").distinguished
    )
    g, h = furer_pair(corpus.subgraph_only_base())
    wit["subgraph_not_spec2"] = (
        compare_graphs(g, h, "subgraph").distinguished and not compare_graphs(g, h, "spec", 2).distinguished
    )
    g, h = furer_pair(corpus.spec_only_base())
    wit["spec2_not_subgraph"] = (
        compare_graphs(g, h, "spec", 2).distinguished and not compare_graphs(g, h, "subgraph").distinguished
    )
    return CaseResult(
        "A10", "wl1 <= spec <= local2 <= fwl2 on the catalog, with strictness and incomparability witnesses",
        {"pairs": len(rows), "chain": list(CHAIN)}, {"violations": 0, "witnesses": "all hold"},
        {"violations": len(bad), "witnesses": wit, "examples": bad[:MAX_EXAMPLES]},
        not bad and all(wit.values()),
    )


# ---------------------------------------------------------------- A11

def check_a11(seed: int) -> CaseResult:
    bad, k2 = [], 0
    for pair in corpus.hierarchy_catalog(seed):
        rep = sympower_encoding_check(pair.g, pair.h, 1)
        if not rep.holds:
            bad.append({"pair": pair.pair_id, "k": 1})
        if max(pair.g.n, pair.h.n) <= 16:
            k2 += 1
            rep = sympower_encoding_check(pair.g, pair.h, 2)
            if not rep.holds:
                bad.append({"pair": pair.pair_id, "k": 2})
    rng = _rng(seed, 11)
    not_identity = 0
    for _ in range(50):
        g = corpus.random_graph(rng, int(rng.integers(1, 11)), float(rng.uniform(0.1, 0.8)))
        if not are_isomorphic(symmetric_power(g, 1).graph, g):
            not_identity += 1
    return CaseResult(
        "A11", "local agreement of order 2k implies spectral agreement on k-th symmetric powers",
        {"k2_pairs": k2, "identity_graphs": 50}, {"violations": 0, "power1_not_identity": 0},
        {"violations": len(bad), "power1_not_identity": not_identity, "examples": bad[:MAX_EXAMPLES]},
        not bad and not_identity == 0,
    )


CHECKS = {
    "A1": check_a1, "A2": check_a2, "A3": check_a3, "A4": check_a4, "A5": check_a5, "A6": check_a6,
    "A7": check_a7, "A8": check_a8, "A9": check_a9, "A10": check_a10, "A11": check_a11,
}


def run_case(case_id: str, seed: int = corpus.DEFAULT_SEED) -> CaseResult:
    t = time.perf_counter()
    res = CHECKS[case_id](seed)
    res.runtime_ms = (time.perf_counter() - t) * 1000
    return res


def select(pattern: str | None) -> list:
    if not pattern:
        return list(CHECKS)
    return [c for c in CHECKS if fnmatch.fnmatchcase(c, pattern)]


def run_suite(pattern: str | None = None, seed: int = corpus.DEFAULT_SEED, jobs: int = 1) -> SuiteReport:
    ids = select(pattern)
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_case, ids, [seed] * len(ids)))
    else:
        results = [run_case(c, seed) for c in ids]
    order = {c: i for i, c in enumerate(CHECKS)}
    return SuiteReport(seed, sorted(results, key=lambda r: order[r.case_id]))
