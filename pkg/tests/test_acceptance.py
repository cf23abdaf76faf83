"""One test per acceptance criterion; each prints a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s``. The lines are also
repeated in the terminal summary. The classical criterion dominates the
runtime (tens of minutes on one core).
"""
from __future__ import annotations

import time

from seqinterp.engine import Prover
from seqinterp.interp import logic_uip
from seqinterp.schema import load_builtin
from seqinterp.syntax import Sequent, parse_formula
from seqinterp.verify import (
    certify_simplifier,
    classical_suite,
    cut_mutation_suite,
    golden_classify,
    order_suite,
    passed,
    run_suite,
)


def _timed(fn, *args, **kwargs):
    started = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - started


def _first(report):
    return report["failures"][:3]


def test_golden_classification(verdict):
    report, elapsed = _timed(golden_classify)
    ok = passed(report) and report["cases"] >= 20 and elapsed < 1.0
    detail = f"{report['cases']} rules, {len(report['failures'])} misclassified, {elapsed:.2f}s"
    assert verdict(1, "golden classification", ok, detail), _first(report)


def test_order_validation(verdict):
    report, elapsed = _timed(order_suite)
    flec_rejected = "rejected" in report["calculi"].get("FLec", {})
    ok = passed(report) and flec_rejected and elapsed < 30.0
    detail = (f"{report['cases']} pool cases, {len(report['failures'])} violations, "
              f"FLec rejected={flec_rejected}, {elapsed:.1f}s")
    assert verdict(2, "terminating orders", ok, detail), _first(report)


def test_plain_uip_on_fle_and_flew(verdict):
    report, elapsed = _timed(run_suite, "uip-plain")
    ok = passed(report) and report["cases"] > 0 and elapsed < 300.0
    detail = f"{report['cases']} checks, {len(report['failures'])} failures, {elapsed:.1f}s"
    assert verdict(3, "plain UIP for FLe/FLew", ok, detail), _first(report)


def _equivalent(prover, a, b):
    return prover.derivable(Sequent([a], [b])) and prover.derivable(Sequent([b], [a]))


def test_weak_uip_on_ipc(verdict):
    report, elapsed = _timed(run_suite, "uip-weak")
    ipc = load_builtin("IPC")
    prover = Prover(ipc)
    identities = {
        "exists p (p /\\ q) = q": (logic_uip(ipc, "p /\\ q", "p")["post"], "q"),
        "exists p (p \\/ q) = top": (logic_uip(ipc, "p \\/ q", "p")["post"], "top"),
        "forall p (q \\/ p) = q": (logic_uip(ipc, "q \\/ p", "p")["pre"], "q"),
    }
    wrong = [name for name, (got, want) in identities.items()
             if not _equivalent(prover, got, parse_formula(want))]
    ok = passed(report) and report["cases"] > 0 and not wrong
    detail = f"{report['cases']} checks, {len(report['failures'])} failures, identities wrong={wrong}, {elapsed:.1f}s"
    assert verdict(4, "weak UIP for IPC", ok, detail), (_first(report), wrong)


def test_classical_strong_uip_matches_oracle(verdict):
    report, elapsed = _timed(classical_suite)
    ok = passed(report) and report["cases"] > 50_000
    detail = f"{report['cases']} formulas, {len(report['failures'])} mismatches, {elapsed:.0f}s"
    assert verdict(5, "CPC strong UIP vs classical oracle", ok, detail), _first(report)


def test_modal_interpolants(verdict):
    report, elapsed = _timed(run_suite, "modal")
    ok = passed(report) and all(part["cases"] > 0 for part in report["parts"])
    detail = (f"{len(report['parts'])} calculi, {report['cases']} boxed sequents, "
              f"{len(report['failures'])} failures, {elapsed:.1f}s")
    assert verdict(6, "modal K/KD interpolants", ok, detail), _first(report)


def test_cut_sampling_and_mutation(verdict):
    report, elapsed = _timed(run_suite, "cut")
    mutated = cut_mutation_suite(seed=0)
    ok = passed(report) and len(mutated["failures"]) >= 1
    detail = (f"{report['cases']} cuts, {len(report['failures'])} underivable; "
              f"mutation caught {len(mutated['failures'])}, {elapsed:.1f}s")
    assert verdict(7, "cut admissibility sampling", ok, detail), _first(report)


def test_simplifier_certification(verdict):
    report, elapsed = _timed(certify_simplifier)
    ok = passed(report) and report["sampled"] >= 100
    detail = (f"{report['rules']} rules, {report['sampled']} sampled interpolants, "
              f"{len(report['failures'])} failures, {elapsed:.1f}s")
    assert verdict(8, "simplifier certification", ok, detail), _first(report)
