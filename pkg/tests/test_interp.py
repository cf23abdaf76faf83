from __future__ import annotations

import pytest

from seqinterp.engine import derivable, replay
from seqinterp.errors import InterpolantTooLarge, ModeError
from seqinterp.interp import (
    Interpolator,
    axiom_exists,
    axiom_exists_strong,
    axiom_forall,
    default_mode,
    exists_p,
    forall_p,
    logic_uip,
    partitions,
    simplify,
)
from seqinterp.schema import load_builtin
from seqinterp.syntax import Sequent, is_p_free, neg, parse_formula, parse_sequent
from seqinterp.verify import truth_table_equivalent


def _texts(parts):
    return {tuple(s.text for s in block) for block in parts}


def _equivalent(calc, a, b):
    return derivable(calc, Sequent([a], [b])) and derivable(calc, Sequent([b], [a]))


@pytest.fixture(scope="module")
def fle():
    return load_builtin("FLe")


def test_partitions():
    assert _texts(partitions(parse_sequent("a, b =>"), 2)) == {("a =>", "b =>"), ("b =>", "a =>")}
    assert list(partitions(parse_sequent("a =>"), 2)) == []
    assert _texts(partitions(parse_sequent("a => b"), 2, "forall")) == {("=> b", "a =>")}


def test_axiom_exists(fle):
    assert axiom_exists(fle, "q, p =>", "p").text == "q * top"
    assert axiom_exists(fle, "q =>", "p").text == "q"
    assert simplify(fle, axiom_exists(fle, "bot =>", "p")).text == "bot"


def test_axiom_forall(fle):
    assert axiom_forall(fle, "=> q", "p").text == "(1 -> bot) \\/ q"
    assert axiom_forall(fle, "p => p", "p").text == "(1 -> bot) \\/ 1"
    assert axiom_forall(fle, "=>", "p").left.text == "1 -> bot"


def test_axiom_exists_strong():
    cflew = load_builtin("CFLew")
    assert axiom_exists_strong(cflew, "q, p => r", "p").text == "q * top /\\ ~r"
    assert axiom_exists_strong(cflew, "=>", "p").text == "1"
    assert "0" in axiom_exists_strong(cflew, "p => p", "p").text.split(" /\\ ")
    with pytest.raises(ModeError):
        axiom_exists_strong(load_builtin("FLe"), "=>", "p")


def test_right_interpolant_in_flew_is_q():
    flew = load_builtin("FLew")
    res = exists_p(flew, "q, p =>", "p")
    assert _equivalent(flew, res.formula, parse_formula("q"))
    assert res.witness is not None and replay(res.witness)
    assert res.witness_root() == parse_sequent("q, p => " + res.formula.text)


def test_left_interpolant_has_replaying_witness(fle):
    res = forall_p(fle, "q => p * q", "p")
    assert is_p_free(res.formula, "p")
    assert res.witness is not None and replay(res.witness)


def test_intuitionistic_quantifier_identities():
    ipc = load_builtin("IPC")
    assert _equivalent(ipc, forall_p(ipc, "=> q \\/ p", "p").formula, parse_formula("q"))
    exists_and = logic_uip(ipc, "p /\\ q", "p")["post"]
    exists_or = logic_uip(ipc, "p \\/ q", "p")["post"]
    forall_or = logic_uip(ipc, "q \\/ p", "p")["pre"]
    assert _equivalent(ipc, exists_and, parse_formula("q"))
    assert _equivalent(ipc, exists_or, parse_formula("top"))
    assert _equivalent(ipc, forall_or, parse_formula("q"))


def test_classical_left_interpolant_matches_substitution():
    cpc = load_builtin("CPC")
    got = forall_p(cpc, "=> (p -> q) /\\ (p \\/ r)", "p").formula
    want = parse_formula("q /\\ r")
    assert _equivalent(cpc, got, want)
    assert truth_table_equivalent(got, want)


def test_strong_right_interpolant_is_negated_left():
    cflew = load_builtin("CFLew")
    interp = Interpolator(cflew, "p", "strong")
    s = parse_sequent("q, p => r, p")
    assert interp.exists(s) is simplify(cflew, neg(interp.forall(s)))


def test_default_modes_and_mode_errors(fle):
    assert default_mode(fle) == "plain"
    assert default_mode(load_builtin("IPC")) == "weak"
    assert default_mode(load_builtin("CPC")) == "strong"
    with pytest.raises(ModeError):
        exists_p(fle, "q, p =>", "p", mode="strong")
    with pytest.raises(ModeError):
        exists_p(fle, "q, p =>", "p", mode="bogus")


def test_size_ceiling(fle):
    with pytest.raises(InterpolantTooLarge):
        exists_p(fle, "q, p =>", "p", size_ceiling=1)


def test_simplifier_uses_calculus_identities(fle):
    assert simplify(fle, parse_formula("1 * (q /\\ q)")).text == "q"
    assert simplify(load_builtin("FLew"), parse_formula("top -> q")).text == "q"
    assert simplify(load_builtin("IPC"), parse_formula("q \\/ 0")).text == "q"
    # 0 and bot differ in FLe
    assert simplify(fle, parse_formula("q \\/ 0")).text == "0 \\/ q"


def test_double_negation_only_in_involutive_calculi(fle):
    assert simplify(fle, parse_formula("~~q")).text == "~~q"
    assert simplify(load_builtin("CFLe"), parse_formula("~~q")).text == "q"
    assert simplify(load_builtin("CPC"), parse_formula("bot + q")).text == "q"
