from __future__ import annotations

from importlib import resources

import pytest

from seqinterp.errors import (
    ClassificationError,
    ModeError,
    NonTerminatingError,
    ParseError,
)
from seqinterp.schema import (
    ACCEPTED,
    CONTEXT_SHARING,
    LEFT,
    MODAL_K,
    OCCURRENCE,
    axiom_instances,
    builtin_names,
    classify_rule,
    load_builtin,
    load_calculus,
    parse_calculus,
    parse_schema,
)
from seqinterp.syntax import parse_sequent
from seqinterp.verify import GOLDEN

HEADER = "calculus T single\norder additive\naxiom id: a => a\n"


def test_every_builtin_loads_and_classifies_into_accepted_classes():
    names = builtin_names()
    assert len(names) == 14
    for name in names:
        calc = load_builtin(name)
        for rule in calc.rules:
            assert calc.classes[rule.name].kind in ACCEPTED[calc.mode], (name, rule.name)
        for ax in calc.axioms:
            assert calc.classes[ax.name].axiom_kind in {1, 2, 3, 4, 5}, (name, ax.name)


def test_fle_shape():
    calc = load_builtin("FLe")
    assert calc.mode == "single"
    assert len(calc.rules) == 12
    assert len(calc.axioms) == 5
    assert str(calc.classes["L->"]) == LEFT


def test_builtin_lookup_is_case_insensitive_and_accepts_paths():
    assert load_builtin("fle").name == "FLe"
    path = resources.files("seqinterp").joinpath("calculi", "flew.seq")
    assert load_calculus(str(path)).name == "FLew"


def test_cut_is_rejected_with_occurrence_reason():
    text = HEADER + "rule cut: $G => a ; $S, a => $D --- $G, $S => $D\n"
    with pytest.raises(ClassificationError) as info:
        parse_calculus(text)
    assert info.value.rule == "cut"
    assert OCCURRENCE in info.value.reasons


def test_contraction_is_rejected_as_non_terminating():
    text = resources.files("seqinterp").joinpath("calculi", "flec.seq").read_text()
    with pytest.raises(NonTerminatingError) as info:
        parse_calculus(text)
    assert "Lc" in str(info.value)
    assert info.value.violations


def test_dyckhoff_l4_is_context_sharing():
    rule = parse_schema("L4", "$G, b -> c => a -> b ; $G, c => $D --- $G, (a -> b) -> c => $D", False)
    assert classify_rule(rule, "single").kind == CONTEXT_SHARING


def test_k_rule_and_d_requires_k():
    rule = parse_schema("K", "$G => a --- []$G => []a", False)
    assert classify_rule(rule, "single").kind == MODAL_K
    text = HEADER + "rule D: $G => --- []$G =>\n"
    with pytest.raises(Exception, match="requires the K rule"):
        parse_calculus(text)


def test_multi_rule_in_single_calculus_is_a_mode_error():
    text = HEADER + "rule R+: $G => a, b, $D --- $G => a + b, $D\n"
    with pytest.raises(ModeError):
        parse_calculus(text)


def test_dsl_errors_carry_offsets():
    with pytest.raises(ParseError):
        parse_calculus("calculus T sideways\n")
    with pytest.raises(ParseError) as info:
        parse_calculus(HEADER + "rule R: $G => a --- $G => a /\\\n")
    assert info.value.offset > len(HEADER)


def test_occurrence_check_matches_direct_recomputation():
    for family, mode, name, text, _ in GOLDEN:
        if text.startswith("axiom"):
            continue
        rule = parse_schema(name, text.removesuffix(" where p atomic"), False)
        principals = rule.conclusion.forms()
        premise_leaves = {leaf for prem in rule.premises for f in prem.forms() for leaf in f.leaves}
        allowed = set(principals[0].leaves) if len(principals) == 1 else set()
        violated = OCCURRENCE in classify_rule(rule, mode).reasons
        assert violated == (not premise_leaves <= allowed), (family, name)


def test_axiom_instances():
    fle = load_builtin("FLe")
    by_name = {ax.name: ax for ax in fle.axioms}
    assert len(axiom_instances(by_name["id"], parse_sequent("p => p"))) == 1
    found = axiom_instances(by_name["bot"], parse_sequent("q, bot => r"))
    assert len(found) == 1
    assert [f.text for f in found[0]["$G"]] == ["q"]
    assert [f.text for f in found[0]["$D"]] == ["r"]
    assert axiom_instances(by_name["bot"], parse_sequent("q => r")) == []


def test_without_rules_copies():
    fle = load_builtin("FLe")
    smaller = fle.without_rules(["L->"])
    assert "L->" not in {r.name for r in smaller.rules}
    assert "L->" in {r.name for r in fle.rules}
