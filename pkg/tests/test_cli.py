from __future__ import annotations

import json
from importlib import resources

from seqinterp.cli import NEGATIVE, OK, USAGE, run


def test_prove_prints_a_tree(capsys):
    assert run(["prove", "FLe", "p * q => q * p"]) == OK
    out = capsys.readouterr().out
    assert "[L*]" in out and "[R*]" in out


def test_prove_negative_and_json(capsys):
    assert run(["prove", "FLe", "=> p", "--json"]) == NEGATIVE
    payload = json.loads(capsys.readouterr().out)
    assert payload["derivable"] is False and payload["proof"] is None


def test_interpolate_exists(capsys):
    assert run(["interpolate", "FLew", "-p", "p", "--exists", "q, p =>"]) == OK
    assert capsys.readouterr().out.splitlines()[0] == "q"


def test_uip(capsys):
    assert run(["uip", "IPC", "p /\\ q", "-p", "p", "--json"]) == OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["post"] == "q"


def test_classify(capsys):
    assert run(["classify", "IPC"]) == OK
    assert "L->->: ContextSharingSemiAnalytic" in capsys.readouterr().out


def test_verify_golden(capsys):
    assert run(["verify", "golden"]) == OK
    assert "0 failures" in capsys.readouterr().out


def test_calculus_check(tmp_path, capsys):
    good = resources.files("seqinterp").joinpath("calculi", "fle.seq").read_text()
    path = tmp_path / "mine.seq"
    path.write_text(good)
    assert run(["calculus-check", str(path), "--pool-size", "3"]) == OK
    bad = resources.files("seqinterp").joinpath("calculi", "flec.seq").read_text()
    path.write_text(bad)
    assert run(["calculus-check", str(path)]) == NEGATIVE
    assert "NonTerminatingError" in capsys.readouterr().out


def test_usage_errors(monkeypatch, capsys):
    assert run(["prove", "FLe", "p /\\"]) == USAGE
    assert run(["prove", "Nope", "p => p"]) == USAGE
    assert run(["prove", "FLe", "p => p", "--budget", "0"]) == USAGE
    monkeypatch.setenv("SEQINTERP_BUDGET", "many")
    assert run(["prove", "FLe", "p => p"]) == USAGE
    assert run([]) == USAGE
    assert "error" in capsys.readouterr().err


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("SEQINTERP_BUDGET", "2")
    assert run(["prove", "FLe", "(p /\\ q) * (q /\\ p) => (q /\\ p) * (p /\\ q)"]) == USAGE
