from __future__ import annotations

from seqinterp.schema import load_builtin
from seqinterp.syntax import TOP, ZERO, parse_formula
from seqinterp.verify import (
    Pool,
    check_cut_admissible,
    check_uip,
    classical_oracle,
    classical_suite,
    evaluate,
    golden_classify,
    modal_suite,
    passed,
    truth_table_equivalent,
)


def test_pool_counts_are_stable():
    fle = load_builtin("FLe")
    pool = Pool.for_calculus(fle)
    assert len(pool.sequents()) == 540
    assert len(pool.side_sequents("p", succedent=False)) == 156
    assert pool.sequents() == Pool.for_calculus(fle).sequents()
    assert all(s.size <= 3 and len(list(s.formulas())) <= 3 for s in pool.sequents())


def test_pool_sizes_count_nodes():
    pool = Pool(("p",), max_size=3, max_width=1, constants=(), connectives=())
    assert [f.text for f in pool.formulas()] == ["p"]
    pool = Pool(("p",), max_size=3, max_width=1, constants=(ZERO,), connectives=("->",))
    assert "~p" in {f.text for f in pool.formulas()}


def test_check_uip_passes_on_the_flew_example():
    flew = load_builtin("FLew")
    report = check_uip(flew, "q, p =>", "p")
    assert report["failures"] == []
    assert report["cases"] > 100


def test_corrupted_interpolant_is_caught():
    flew = load_builtin("FLew")
    report = check_uip(flew, "q, p =>", "p", overrides={"exists": TOP})
    assert {f["clause"] for f in report["failures"]} == {"iv"}
    report = check_uip(flew, "q, p =>", "p", overrides={"exists": parse_formula("q * q")})
    assert "iii" in {f["clause"] for f in report["failures"]}


def test_classical_oracle():
    oracle = classical_oracle("(p -> q) /\\ (p \\/ r)", "p")
    assert truth_table_equivalent(oracle["pre"], parse_formula("q /\\ r"))
    assert truth_table_equivalent(oracle["post"], parse_formula("q \\/ r"))
    assert evaluate(parse_formula("~p \\/ q"), {"p": False, "q": False})
    assert not truth_table_equivalent(parse_formula("p"), parse_formula("q"))


def test_classical_suite_on_a_slice():
    formulas = [parse_formula(t) for t in ("p -> q", "(p -> q) -> p", "p /\\ ~p", "(p \\/ q) /\\ (~p \\/ r)")]
    report = classical_suite(formulas=formulas)
    assert passed(report), report["failures"]
    assert report["cases"] == 4


def test_modal_suite_on_a_small_pool():
    calc = load_builtin("FLe-K")
    report = modal_suite(calc, pool=Pool.for_calculus(calc, max_size=3))
    assert passed(report), report["failures"]
    assert report["cases"] > 0


def test_cut_sampling_is_deterministic():
    first = check_cut_admissible("FLew", samples=20, seed=3)
    second = check_cut_admissible("FLew", samples=20, seed=3)
    assert first["failures"] == []
    assert 0 < first["cases"] <= 20
    assert (first["cases"], first["candidates"]) == (second["cases"], second["candidates"])


def test_golden_table():
    report = golden_classify()
    assert passed(report)
    assert report["cases"] >= 20
