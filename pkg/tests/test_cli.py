import json

import pydot
import pytest

from schulzectl.cli import main

from helpers import EXAMPLE_TEXT


def run(capsys, *argv):
    try:
        code = main([str(a) for a in argv])
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def record(out):
    lines = out.strip().splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


@pytest.fixture
def example(tmp_path):
    path = tmp_path / "example.elect"
    path.write_text(EXAMPLE_TEXT)
    return path


def test_winners(capsys, example):
    code, out, _ = run(capsys, "winners", example)
    assert (code, out) == (0, "a b\n")


def test_winners_matrices(capsys, example):
    code, out, _ = run(capsys, "winners", "--show-matrices", example)
    assert code == 0 and "net advantage" in out and "strongest paths" in out


def test_destructive_partition_yes(capsys, example):
    code, out, _ = run(capsys, "control", "solve", "--family", "pc", "--goal", "d", "--tie", "tp", "-p", "c", example)
    rec = record(out)
    assert code == 0 and rec["decision"] == "yes" and rec["method"] == "poly"
    assert rec["witness"] and "elapsed_ms" in rec


def test_condorcet_winner_partition_no(capsys, tmp_path):
    path = tmp_path / "cw.elect"
    path.write_text("candidates: a, b, c\n2: a > b > c\n1: b > c > a\n")
    code, out, _ = run(capsys, "control", "solve", "--family", "pc", "--goal", "d", "--tie", "te", "-p", "a", path)
    assert code == 1 and record(out)["decision"] == "no"


def test_bruteforce_method_agrees(capsys, example):
    args = ["control", "solve", "--family", "rpc", "--goal", "d", "--tie", "te", "-p", "a"]
    fast = record(run(capsys, *args, example)[1])
    slow = record(run(capsys, *args, "--method", "bruteforce", example)[1])
    assert fast["decision"] == slow["decision"]


def test_usage_errors_exit_2(capsys, example, tmp_path):
    assert run(capsys, "control", "solve", "--family", "zz", "--goal", "c", "-p", "a", example)[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "winners", tmp_path / "missing.elect")[0] == 2
    bad = tmp_path / "bad.elect"
    bad.write_text("candidates: a, b\n1: a > q\n")
    code, _, err = run(capsys, "winners", bad)
    assert code == 2 and "line 2" in err
    # partition control needs a tie model
    assert run(capsys, "control", "solve", "--family", "pc", "--goal", "d", "-p", "a", example)[0] == 2


def test_budget_exit_3(capsys, example):
    code, out, _ = run(capsys, "manipulate", "--count", "3", "-p", "c", "--budget", "5", example)
    assert code == 3 and record(out)["decision"] == "unknown"


def test_manipulate(capsys, example):
    code, out, _ = run(capsys, "manipulate", "--count", "1", "-p", "c", example)
    rec = record(out)
    assert code in (0, 1) and rec["decision"] in ("yes", "no")
    code, out, _ = run(capsys, "manipulate", "--count", "1", "-p", "a", example)
    assert code == 0 and record(out)["witness"]


def test_graph(capsys, example):
    code, out, _ = run(capsys, "graph", example)
    assert code == 0 and pydot.graph_from_dot_data(out)
    code, out, _ = run(capsys, "graph", "--format", "json", example)
    assert json.loads(out)["winners"] == ["a", "b"]


def test_synth(capsys, tmp_path):
    rel = tmp_path / "r.txt"
    rel.write_text("a > b : 2\nb > c : 4\nc > a : 2\n")
    out_path = tmp_path / "s.elect"
    assert run(capsys, "synth", rel, "-o", out_path)[0] == 0
    code, out, _ = run(capsys, "winners", out_path)
    assert (code, out) == (0, "a b\n")
    rel.write_text("a > b : 3\n")
    assert run(capsys, "synth", rel)[0] == 2


def test_reduce_then_solve(capsys, tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 1 1\n1 1 1 0\n")
    out = tmp_path / "inst.elect"
    assert run(capsys, "control", "reduce", "--family", "ac", "--goal", "c", cnf, "-o", out)[0] == 0
    text = out.read_text()
    assert "#@ reduction: cc_ac" in text and "pool: x1+, x1-" in text
    code, stdout, _ = run(capsys, "control", "solve", "--family", "ac", "--goal", "c", "-p", "p", out)
    assert code == 0 and record(stdout)["decision"] == "yes"


def test_verify(capsys, tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 1 1\n1 1 1 0\n")
    code, out, _ = run(capsys, "control", "verify", "--family", "ac", "--goal", "c", cnf)
    assert code == 0 and record(out)["decision"] == "yes"
    code, out, _ = run(capsys, "control", "verify", "--family", "pc", "--goal", "c", "--tie", "tp", "--budget", "3", cnf)
    assert code == 3


def test_dc_via_ppvc(capsys, example):
    code, out, _ = run(capsys, "control", "dc-via-ppvc", "--family", "dc", "-p", "a", "-k", "1", example)
    rec = record(out)
    assert code == 0 and rec["decision"] == "yes" and rec["oracle_calls"] >= 1


def test_ppvc_solve(capsys, tmp_path):
    g = tmp_path / "g.txt"
    g.write_text("s v\nv t\nt s\n")
    code, out, _ = run(capsys, "ppvc", "solve", g, "-s", "s", "-t", "t", "-k", "1")
    assert code == 0 and record(out)["witness"] == ["v"]
    g.write_text("s t\nt s\n")
    assert run(capsys, "ppvc", "solve", g, "-s", "s", "-t", "t", "-k", "1")[0] == 1


def test_gap_nonunique_none(capsys):
    code, out, _ = run(capsys, "gap", "--candidates", "3", "--margin", "2", "--model", "nonunique")
    assert code == 1 and record(out)["witness"] is None
