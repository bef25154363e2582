import json
import subprocess
import sys

import pytest

from coxspine.cli import main, parse_automorphism
from coxspine.graphs import graph_to_json, standard_zero_star
from coxspine.splittings import make_splitting, splitting_to_json
from coxspine.words import conj_gen, identity, sigma, compose, transposition


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "coxspine.cli", *argv],
                          capture_output=True, text=True)
    return proc


def test_ball_radius1_counts():
    p = run_cli("ball", "--n", "5", "--radius", "1")
    assert p.returncode == 0
    assert len(json.loads(p.stdout)["vertices"]) == 6


def test_ball_dot():
    p = run_cli("ball", "--n", "4", "--radius", "2", "--format", "dot")
    assert p.returncode == 0
    assert p.stdout.startswith("graph ball")


def test_verify_pass_and_exit_code():
    p = run_cli("verify", "degree-law", "--n", "4")
    assert p.returncode == 0
    report = json.loads(p.stdout)
    assert report["passed"] == report["checks"]
    assert report["counterexamples"] == []


def test_verify_unknown_suite_usage_error():
    p = run_cli("verify", "no-such-suite", "--n", "4")
    assert p.returncode == 2


def test_canon_idempotent(tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps(graph_to_json(standard_zero_star(4))))
    p1 = run_cli("canon", str(f))
    assert p1.returncode == 0
    f.write_text(p1.stdout)
    p2 = run_cli("canon", str(f))
    assert p2.stdout == p1.stdout


def test_canon_invariant_violation(tmp_path):
    data = {"n": 4,
            "vertices": [{"id": 0, "label": None}] +
                        [{"id": i, "label": {"core": i, "conj": []}}
                         for i in range(1, 5)],
            "edges": [[0, 1], [0, 2], [2, 3], [3, 4]]}
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(data))
    p = run_cli("canon", str(f))
    assert p.returncode == 2
    assert "degree" in p.stderr


def test_act_involutions(tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps(graph_to_json(standard_zero_star(4))))
    canon = run_cli("canon", str(f)).stdout
    for spec in ("t(1,2) t(1,2)", "s(2,1) s(2,1)"):
        p = run_cli("act", spec, str(f))
        assert p.returncode == 0
        assert p.stdout == canon


def test_parse_automorphism():
    f = parse_automorphism("s(2,1) t(1,3)", 4)
    want = compose(sigma(4, 2, 1), transposition(4, 1, 3))
    assert f == want
    with pytest.raises(ValueError):
        parse_automorphism("s(9,1)", 4)
    with pytest.raises(ValueError):
        parse_automorphism("garbage", 4)


def test_budget_exit_code():
    p = run_cli("ball", "--n", "4", "--radius", "3", "--budget", "5")
    assert p.returncode == 3
    assert "cap" in p.stderr


def test_neighbors_and_refine(tmp_path):
    c = [conj_gen(i) for i in range(1, 5)]
    s = make_splitting(4, [(c[0], c[1], c[2]), (c[3],)], [(0, 1)])
    f = tmp_path / "s.json"
    f.write_text(json.dumps(splitting_to_json(s)))
    p = run_cli("neighbors", str(f), "--count", "3")
    assert p.returncode == 0
    assert len(json.loads(p.stdout)) == 3

    parts = {"n": 4, "partitions": [
        {"left": [{"core": 1}],
         "right": [{"core": 2}, {"core": 3}, {"core": 4}]},
        {"left": [{"core": 1}, {"core": 2}],
         "right": [{"core": 3}, {"core": 4}]}]}
    g = tmp_path / "parts.json"
    g.write_text(json.dumps(parts))
    p2 = run_cli("splitting-refine", str(g))
    assert p2.returncode == 0
    assert len(json.loads(p2.stdout)["edges"]) == 2


def test_main_in_process():
    assert main(["verify", "bounded-minimizer", "--n", "5"]) == 0
