from __future__ import annotations

import io
import json

import pytest

from specwl import cli, suite
from specwl.graph import encode_edge_list, encode_graph6, make_family


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_furer_and_distinguish(capsys):
    code, out = run_json(capsys, "furer", "doubled_path:2")
    assert code == 0 and out["graph"]["n"] == 56
    code, out = run_json(capsys, "distinguish", "doubled_path:1", "cycle:10")
    assert code == 0 and out["distinguished_at"] == 1


def test_furer_pair_from_files(tmp_path, capsys):
    from specwl.furer import furer_pair

    g, h = furer_pair(make_family("doubled_path", [2]))
    pg, ph = tmp_path / "g.txt", tmp_path / "h.g6"
    pg.write_text(encode_edge_list(g))
    ph.write_text(encode_graph6(h) + "\n")
    code, out = run_json(capsys, "distinguish", str(pg), str(ph))
    assert code == 0 and out["verdict"] == "distinguished" and out["distinguished_at"] == 3
    code, out = run_json(capsys, "distinguish", str(pg), str(ph), "--max-iters", "2")
    assert code == 0 and out["verdict"] != "distinguished"


def test_k4_pair_indistinguishable(tmp_path, capsys):
    paths = []
    for name, twist in (("g", []), ("h", ["--twist", "0-1"])):
        code, out = run_json(capsys, "furer", "clique:4", *twist)
        assert code == 0 and out["graph"]["n"] == 16
        p = tmp_path / f"{name}.txt"
        p.write_text(f"{out['graph']['n']} {len(out['graph']['edges'])}\n"
                     + "".join(f"{u} {v}\n" for u, v in out["graph"]["edges"]))
        paths.append(str(p))
    code, out = run_json(capsys, "distinguish", *paths)
    assert code == 0 and out["verdict"] != "distinguished"


def test_ptree_depth(capsys):
    code, out = run_json(capsys, "ptree", "--depth", "doubled_path:2")
    assert code == 0 and out == 3
    code, out = run_json(capsys, "ptree", "--depth", "clique:4")
    assert code == 0 and out is None


def test_output_is_byte_identical(capsys):
    args = ["refine", "theta:2,3,4", "--algo", "spec"]
    first = run(capsys, *args)
    assert first == run(capsys, *args)
    args = ["suite", "A6"]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_stdin_graph(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(encode_graph6(make_family("cycle", [5]))))
    code, out = run_json(capsys, "refine", "-", "--iters", "1")
    assert code == 0 and len(out["iterations"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["refine", "nope:3"],
        ["refine", "cycle:2"],
        ["refine", "cycle:5", "--iters", "-1"],
        ["refine", "cycle:5", "--algo", "bogus"],
        ["hom", "clique:5", "cycle:5", "--method", "tw2"],
        ["sympower", "path:3", "--k", "9"],
        ["suite", "Z9"],
        ["frobnicate"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_file_contents(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("3 5\n0 1\n")
    code, out = run_json(capsys, "refine", str(p))
    assert code == 2 and out["error"] == "invalid_input"


def test_cap_exceeded_exit_3(capsys):
    code, out = run_json(capsys, "pebble", "path:40")
    assert code == 3 and out["error"] == "cap_exceeded"


def test_counting_commands(capsys):
    assert run_json(capsys, "hom", "cycle:3", "clique:4") == (0, {"hom": 24})
    assert run_json(capsys, "sub", "cycle:4", "clique:4") == (0, {"sub": 3})
    assert run_json(capsys, "sub", "cycle:4", "clique:4", "--method", "brute") == (0, {"sub": 3})
    code, out = run_json(capsys, "spasm", "cycle:8", "--countable")
    assert code == 0 and out["counting"]["countable"] is False
    assert out["counting"]["witness"]["n"] == 4


def test_pebble_and_sympower(capsys):
    code, out = run_json(capsys, "pebble", "clique:4")
    assert code == 0 and out == {"result": "duplicator_survives"}
    code, out = run_json(capsys, "pebble", "doubled_path:2", "--trace")
    assert code == 0 and out["spoiler_wins_in"] == 2
    code, out = run_json(capsys, "sympower", "path:3", "--k", "2")
    assert code == 0 and out["graph"]["edges"] == [[0, 1], [1, 2]]


def test_suite_pass_and_table(capsys):
    code, out, err = run(capsys, "suite", "A4")
    report = json.loads(out)
    assert code == 0 and report["summary"] == {"total": 1, "passed": 1, "failed": 0}
    assert "runtime_ms" not in report["cases"][0]
    assert "A4" in err and "PASS" in err
    code, out, _ = run(capsys, "suite", "A4", "--timings")
    assert "runtime_ms" in json.loads(out)["cases"][0]


def test_suite_failure_exit_1(capsys, monkeypatch):
    failing = suite.CaseResult("A6", "forced failure", {}, True, False, False)
    monkeypatch.setitem(suite.CHECKS, "A6", lambda seed: failing)
    code, out, err = run(capsys, "suite", "A6")
    assert code == 1 and json.loads(out)["summary"]["failed"] == 1
    assert "FAIL" in err


def test_table_format_writes_stderr(capsys):
    code, out, err = run(capsys, "--format", "table", "ptree", "doubled_path:1")
    assert code == 0 and json.loads(out)["parallel_tree"] and "depth 2" in err
