from __future__ import annotations

import pytest

from seqinterp.engine import (
    Prover,
    derivable,
    match_backward,
    measure,
    prove,
    replay,
    validate_order,
)
from seqinterp.errors import BudgetExceeded, CalculusError
from seqinterp.schema import load_builtin, parse_calculus
from seqinterp.syntax import parse_sequent
from seqinterp.verify import Pool


@pytest.fixture(scope="module")
def fle():
    return load_builtin("FLe")


def _premises(instances, name):
    return {tuple(p.text for p in inst.premises) for inst in instances if inst.name == name}


def test_left_conjunction_has_two_one_premise_instances(fle):
    found = _premises(match_backward(fle, parse_sequent("p /\\ q => p")), "L/\\1")
    found |= _premises(match_backward(fle, parse_sequent("p /\\ q => p")), "L/\\2")
    assert found == {("p => p",), ("q => p",)}


def test_nothing_matches_a_bare_atom_on_the_right(fle):
    assert match_backward(fle, parse_sequent("=> p")) == []


def test_left_implication_context_splits(fle):
    found = _premises(match_backward(fle, parse_sequent("p -> q, p => q")), "L->")
    assert ("p => p", "q => q") in found
    # four ways to distribute {p} and {q}, only succedent q may go right
    assert len(found) == 2


def test_measure(fle):
    assert measure(fle, parse_sequent("p => p")) == 2
    k = load_builtin("FLe-K")
    assert measure(k, parse_sequent("[]p =>")) > measure(k, parse_sequent("p =>"))


def test_commutativity_of_times_is_derivable_and_replays(fle):
    tree = prove(fle, "p * q => q * p")
    assert tree is not None
    assert tree.rule == "L*"
    assert replay(tree)
    assert tree.children[0].rule == "R*"
    assert {c.rule for c in tree.children[0].children} == {"id"}


def test_underivable_examples(fle):
    assert not derivable(fle, "=> p")
    assert not derivable(fle, "p, q => p")  # no weakening in FLe
    assert derivable(load_builtin("FLew"), "p, q => p")


def test_peirce_fails_intuitionistically_but_holds_classically():
    peirce = "=> ((p -> q) -> p) -> p"
    assert not derivable(load_builtin("IPC"), peirce)
    assert derivable(load_builtin("CPC"), peirce)


def test_intuitionistic_sanity():
    ipc = load_builtin("IPC")
    assert derivable(ipc, "=> ~~(p \\/ ~p)")
    assert not derivable(ipc, "=> p \\/ ~p")
    assert derivable(ipc, "p /\\ (q \\/ r) => (p /\\ q) \\/ (p /\\ r)")


def test_modal_k_distribution():
    k = load_builtin("FLew-K")
    assert derivable(k, "[](p -> q), []p => []q")
    assert not derivable(k, "[]p => p")
    assert derivable(load_builtin("FLew-KD"), "[]bot =>")


def test_budget_is_enforced(fle):
    with pytest.raises(BudgetExceeded):
        Prover(fle, budget=3).derivable("(p /\\ q) * (q /\\ p) => (q /\\ p) * (p /\\ q)")


def test_unvalidated_order_requires_force():
    text = ("calculus T single\norder additive\naxiom id: a => a\n"
            "rule Lc: $G, a, a => $D --- $G, a => $D\n")
    with pytest.raises(CalculusError):
        parse_calculus(text)


def test_builtin_orders_hold_on_a_small_pool(fle):
    pool = Pool.for_calculus(fle, max_size=4, max_width=2)
    assert validate_order(fle, pool.sequents()) == []


def test_order_violations_are_reported():
    from importlib import resources

    from seqinterp.verify import FLEC_TEXT

    flec = parse_calculus(FLEC_TEXT, check_order=False)
    found = validate_order(flec, [parse_sequent("p => q")])
    assert {v["rule"] for v in found} == {"Lc"}

    # Dyckhoff's implication-on-the-left rules need the exponential order
    text = resources.files("seqinterp").joinpath("calculi", "ipc.seq").read_text()
    order_line = next(line for line in text.splitlines() if line.startswith("order"))
    additive = parse_calculus(text.replace(order_line, "order additive"), check_order=False)
    pool = Pool.for_calculus(additive, max_size=5, max_width=1)
    assert {v["rule"] for v in validate_order(additive, pool.sequents()) if "rule" in v} == {
        "L->->", "L/\\->", "L\\/->", "L*->"}
    assert validate_order(load_builtin("IPC"), pool.sequents()) == []
