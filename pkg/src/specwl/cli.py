"""specwl command line: JSON on stdout, human-readable text on stderr.

Exit codes: 0 success, 1 suite failure, 2 input error, 3 resource cap.
Graph arguments accept a file path (graph6 or edge list), '-' for stdin, or
a built-in family such as ``doubled_path:2`` or ``cycle:7``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .corpus import DEFAULT_SEED
from .errors import CapExceededError, SpecWLError
from .furer import furer, twist
from .graph import FAMILIES, Graph, parse_family, parse_graph
from .homcount import counting_power_check, hom_brute, hom_count, hom_tw2, spasm_basis, sub_brute, sub_via_hom
from .pebble import game_trace, solve_simplified_game
from .ptree import find_skeleton
from .refine import STABLE, compare_graphs
from .sympower import symmetric_power, sympower_encoding_check
from .wl import ALGOS, refine

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_graph(arg: str) -> Graph:
    if arg == "-":
        return parse_graph(sys.stdin.read())
    if os.path.exists(arg):
        with open(arg, encoding="ascii") as fh:
            return parse_graph(fh.read())
    if arg.partition(":")[0] in FAMILIES:
        return parse_family(arg)
    raise UsageError(f"{arg!r} is neither a file nor a known family")


def _iters(text: str):
    if text == STABLE:
        return STABLE
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a non-negative integer or 'stable'") from None
    if value < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer or 'stable'")
    return value


def _graph_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edge_list]}


def _edge(text: str) -> tuple:
    try:
        a, b = text.replace("-", ",").split(",")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad edge {text!r}; use u-v") from None


# ---------------------------------------------------------------- commands

def cmd_refine(a) -> tuple:
    g = load_graph(a.graph)
    kw = {"k": a.k} if a.algo == "kspec" else {}
    trace = refine(a.algo, g, a.iters, **kw)
    out = trace.to_json()
    text = "\n".join(f"iteration {t}: {it['classes']} classes" for t, it in enumerate(out["iterations"]))
    return out, text


def cmd_distinguish(a) -> tuple:
    g, h = load_graph(a.g), load_graph(a.h)
    kw = {"k": a.k} if a.algo == "kspec" else {}
    verdict = compare_graphs(g, h, a.algo, a.max_iters, **kw)
    out = verdict.to_json()
    return out, " ".join(f"{k}={v}" for k, v in out.items())


def cmd_hom(a) -> tuple:
    f, g = load_graph(a.pattern), load_graph(a.host)
    fn = {"auto": hom_count, "brute": hom_brute, "tw2": hom_tw2}[a.method]
    value = fn(f, g)
    return {"hom": value}, str(value)


def cmd_sub(a) -> tuple:
    f, g = load_graph(a.pattern), load_graph(a.host)
    value = (sub_brute if a.method == "brute" else sub_via_hom)(f, g)
    return {"sub": value}, str(value)


def cmd_spasm(a) -> tuple:
    f = load_graph(a.pattern)
    basis = spasm_basis(f)
    out = {
        "automorphisms": basis.aut_count,
        "members": [dict(_graph_json(q), coefficient=c) for q, c in basis.entries],
    }
    if a.countable:
        out["counting"] = counting_power_check(f, a.depth).to_json()
    return out, f"{len(basis.entries)} spasm members"


def cmd_furer(a) -> tuple:
    fg = furer(load_graph(a.base))
    if a.twist:
        fg = twist(fg, a.twist)
    out = fg.to_json()
    out["graph"] = _graph_json(fg.graph)
    return out, f"{fg.graph.n} vertices, {fg.graph.m} edges"


def cmd_ptree(a) -> tuple:
    sk = find_skeleton(load_graph(a.graph))
    depth = None if sk is None else sk.depth
    if a.depth:
        return depth, "not a parallel tree" if depth is None else f"depth {depth}"
    if sk is None:
        return {"parallel_tree": False}, "not a parallel tree"
    return dict(sk.to_json(), parallel_tree=True), f"depth {depth}"


def cmd_pebble(a) -> tuple:
    base = load_graph(a.base)
    if a.trace:
        res = solve_simplified_game(base)
        if res.duplicator_survives:
            return res.to_json(), "duplicator survives"
        tree = game_trace(base)
        return tree, f"spoiler wins after {tree['spoiler_wins_in']} rounds"
    res = solve_simplified_game(base, a.max_steps)
    text = "duplicator survives" if res.duplicator_survives else f"spoiler wins after {res.spoiler_wins_in} rounds"
    return res.to_json(), text


def cmd_sympower(a) -> tuple:
    g = load_graph(a.graph)
    if a.against:
        rep = sympower_encoding_check(g, load_graph(a.against), a.k)
        return rep.to_json(), "implication holds" if rep.holds else "implication violated"
    sp = symmetric_power(g, a.k)
    out = sp.to_json()
    out["graph"] = _graph_json(sp.graph)
    return out, f"{sp.graph.n} vertices, {sp.graph.m} edges"


def cmd_suite(a) -> tuple:
    from .suite import run_suite, select

    if not select(a.filter):
        raise UsageError(f"no case matches {a.filter!r}")
    report = run_suite(a.filter, a.seed, a.jobs)
    return report.to_json(timings=a.timings), report.table(), report.passed


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="specwl", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["json", "table"], default="json",
                   help="'table' also renders a summary on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("refine", help="run one refinement and print its trace")
    s.add_argument("graph")
    s.add_argument("--algo", choices=ALGOS, default="spec")
    s.add_argument("--iters", type=_iters, default=STABLE)
    s.add_argument("--k", type=int, default=1)
    s.set_defaults(fn=cmd_refine)

    s = sub.add_parser("distinguish", help="first iteration separating two graphs")
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("--algo", choices=ALGOS, default="spec")
    s.add_argument("--max-iters", type=_iters, default=STABLE)
    s.add_argument("--k", type=int, default=1)
    s.set_defaults(fn=cmd_distinguish)

    s = sub.add_parser("hom", help="homomorphism count")
    s.add_argument("pattern")
    s.add_argument("host")
    s.add_argument("--method", choices=["auto", "brute", "tw2"], default="auto")
    s.set_defaults(fn=cmd_hom)

    s = sub.add_parser("sub", help="subgraph count")
    s.add_argument("pattern")
    s.add_argument("host")
    s.add_argument("--method", choices=["spasm", "brute"], default="spasm")
    s.set_defaults(fn=cmd_sub)

    s = sub.add_parser("spasm", help="homomorphic images with Möbius coefficients")
    s.add_argument("pattern")
    s.add_argument("--countable", action="store_true", help="also decide countability")
    s.add_argument("--depth", type=int, default=None, help="iteration bound for --countable")
    s.set_defaults(fn=cmd_spasm)

    s = sub.add_parser("furer", help="Fürer graph of a base, optionally twisted")
    s.add_argument("base")
    s.add_argument("--twist", type=_edge, nargs="*", default=[], metavar="U-V")
    s.set_defaults(fn=cmd_furer)

    s = sub.add_parser("ptree", help="parallel-tree skeleton and depth")
    s.add_argument("graph")
    s.add_argument("--depth", action="store_true", help="print only the depth (null if none)")
    s.set_defaults(fn=cmd_ptree)

    s = sub.add_parser("pebble", help="solve the two-pebble component game")
    s.add_argument("base")
    s.add_argument("--max-steps", type=int, default=None)
    s.add_argument("--trace", action="store_true", help="emit Spoiler's strategy tree")
    s.set_defaults(fn=cmd_pebble)

    s = sub.add_parser("sympower", help="symmetric power, or the encoding check against a second graph")
    s.add_argument("graph")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--against", default=None)
    s.set_defaults(fn=cmd_sympower)

    s = sub.add_parser("suite", help="run the acceptance catalog")
    s.add_argument("filter", nargs="?", default=None, help="case-id glob, e.g. A4 or 'A1*'")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--timings", action="store_true", help="include runtimes in the JSON report")
    s.set_defaults(fn=cmd_suite)
    return p


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def main(argv: list | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        result = args.fn(args)
    except CapExceededError as exc:
        _emit({"error": "cap_exceeded", "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SpecWLError, UsageError, ValueError, OSError, UnicodeDecodeError) as exc:
        _emit({"error": "invalid_input", "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out, text = result[0], result[1]
    _emit(out)
    if args.command == "suite" or args.format == "table":
        print(text, file=sys.stderr)
    if args.command == "suite":
        return EXIT_OK if result[2] else EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
