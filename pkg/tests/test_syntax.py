from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqinterp.errors import ModeError, ParseError
from seqinterp.syntax import (
    AND,
    BOT,
    IMP,
    OR,
    PLUS,
    TIMES,
    TOP,
    ZERO,
    Atom,
    Bin,
    Box,
    FMultiset,
    Sequent,
    compose,
    is_p_free,
    neg,
    parse_formula,
    parse_sequent,
    tilde,
    vars,
)

leaves = st.sampled_from([Atom("p"), Atom("q"), Atom("r"), ZERO, BOT, TOP, Atom("one1")])
formulas = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.builds(Bin, st.sampled_from([AND, OR, IMP, TIMES, PLUS]), kids, kids),
        st.builds(Box, kids),
    ),
    max_leaves=8,
)


@given(formulas)
@settings(max_examples=300)
def test_printing_round_trips(f):
    assert parse_formula(f.text) is f


@given(st.lists(formulas, max_size=4), st.lists(formulas, max_size=3))
@settings(max_examples=150)
def test_sequent_round_trip(ant, suc):
    s = Sequent(ant, suc)
    assert parse_sequent(s.text) == s


def test_negation_is_implication_to_zero():
    f = parse_formula("~p")
    assert f is Bin(IMP, Atom("p"), ZERO)
    assert f is neg(Atom("p"))
    assert f.text == "~p"


def test_precedence_and_associativity():
    assert parse_formula("p -> q -> r") is parse_formula("p -> (q -> r)")
    assert parse_formula("p * q /\\ r") is parse_formula("(p * q) /\\ r")
    assert parse_formula("p /\\ q \\/ r") is parse_formula("(p /\\ q) \\/ r")
    assert parse_formula("p \\/ q + r") is parse_formula("(p \\/ q) + r")
    assert parse_formula("[]p -> q").left is Box(Atom("p"))


def test_unicode_input():
    assert parse_formula("¬p ∧ □q → ⊥") is parse_formula("~p /\\ []q -> bot")
    assert parse_sequent("p ⇒ p") == parse_sequent("p => p")


def test_parse_error_reports_byte_offset_and_expected():
    with pytest.raises(ParseError) as info:
        parse_formula("p /\\ ")
    assert info.value.offset == len("p /\\ ".encode())
    assert "identifier" in info.value.expected
    with pytest.raises(ParseError) as info:
        parse_formula("¬p ∧ )")
    # two three-byte characters precede the offending parenthesis
    assert info.value.offset == len("¬p ∧ ".encode())


def test_unbalanced_and_trailing_input():
    for text in ("(p", "p q", "p ->", "=> p"):
        with pytest.raises(ParseError):
            parse_formula(text)


def test_multiset_semantics():
    p, q = Atom("p"), Atom("q")
    assert FMultiset([p, q, p]) == FMultiset([q, p, p])
    assert FMultiset([p]) != FMultiset([p, p])
    assert (FMultiset([p, q]) + FMultiset([p])).count(p) == 2
    assert FMultiset([p]) - FMultiset([p, p, q]) == FMultiset()
    assert FMultiset([p]) <= FMultiset([p, q])
    assert not FMultiset([p, p]) <= FMultiset([p, q])


def test_compose_and_tilde():
    s, t = parse_sequent("p => q"), parse_sequent("r =>")
    assert compose(s, t) == parse_sequent("p, r => q")
    assert compose(parse_sequent("p =>"), parse_sequent("p =>")) == parse_sequent("p, p =>")
    assert tilde(parse_sequent("p, q => r")) == parse_sequent("p, q =>")
    assert tilde(t) == t


def test_single_conclusion_validation():
    s = parse_sequent("p => q, r")
    assert s.is_valid("multi") and not s.is_valid("single")
    with pytest.raises(ModeError):
        s.validate("single")


def test_vars_and_p_freeness():
    f = parse_formula("p * 1 -> q")
    assert vars(f) == {"p", "q", "1"}
    assert not is_p_free(f, "p")
    assert is_p_free(f, "r")
    assert is_p_free(parse_sequent("q => r"), "p")
    assert not is_p_free(parse_sequent("q => []p"), Atom("p"))
