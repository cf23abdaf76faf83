"""Command-line front end.

Subcommands: classify, prove, interpolate, uip, verify, calculus-check.
Exit status is 0 on success, 1 for a negative result (not derivable, a failed
check) and 2 for usage or input errors.  Numeric flags fall back to the
environment variables SEQINTERP_BUDGET, SEQINTERP_MAX_PARTS,
SEQINTERP_SIZE_CEILING, SEQINTERP_SEED and SEQINTERP_POOL_SIZE.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .engine import DEFAULT_BUDGET, Prover, validate_order
from .errors import (
    BudgetExceeded,
    CalculusError,
    InterpolantTooLarge,
    ParseError,
    RecursionInvariantViolation,
)
from .interp import DEFAULT_SIZE_CEILING, MODES, exists_p, forall_p, logic_uip
from .schema import load_calculus, parse_calculus
from .syntax import parse_formula, parse_sequent
from .verify import SUITES, Pool, run_suite

ENV_PREFIX = "SEQINTERP_"
OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from None


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


# ----------------------------------------------------------------- commands

def cmd_classify(args) -> int:
    calc = load_calculus(args.calculus)
    rows = [{"rule": r.name, **calc.classes[r.name].to_json()} for r in (*calc.axioms, *calc.rules)]
    lines = [f"{calc.name} ({calc.mode}-conclusion)"]
    lines += [f"  {r.name}: {calc.classes[r.name]}" for r in (*calc.axioms, *calc.rules)]
    _emit(args, {"calculus": calc.name, "mode": calc.mode, "rules": rows}, "\n".join(lines))
    return OK


def cmd_prove(args) -> int:
    calc = load_calculus(args.calculus, check_order=not args.force_budget)
    s = parse_sequent(args.sequent)
    prover = Prover(calc, args.budget, force=args.force_budget)
    tree = prover.tree(s)
    payload = {"sequent": s.text, "derivable": tree is not None,
               "proof": tree.to_json() if tree else None, "nodes": prover.nodes}
    _emit(args, payload, tree.to_text() if tree else "NOT DERIVABLE")
    return OK if tree else NEGATIVE


def cmd_interpolate(args) -> int:
    calc = load_calculus(args.calculus)
    s = parse_sequent(args.sequent)
    options = {"max_parts": args.max_parts, "size_ceiling": args.size_ceiling}
    compute = exists_p if args.exists else forall_p
    res = compute(calc, s, args.atom, args.mode, budget=args.budget, **options)
    lines = [res.formula.text,
             f"# {res.kind} {res.atom} of {res.sequent.text} ({res.mode} mode)",
             f"# raw size {res.raw_size}, simplified size {res.simplified_size}",
             f"# witness {'found' if res.witness else 'missing'} for {res.witness_root().text}"]
    _emit(args, res.to_json(), "\n".join(lines))
    return OK if res.witness is not None else NEGATIVE


def cmd_uip(args) -> int:
    calc = load_calculus(args.calculus)
    phi = parse_formula(args.formula)
    out = logic_uip(calc, phi, args.atom, args.mode, max_parts=args.max_parts, size_ceiling=args.size_ceiling)
    payload = {"formula": phi.text, "atom": args.atom, "pre": out["pre"].text, "post": out["post"].text}
    _emit(args, payload, f"pre:  {out['pre'].text}\npost: {out['post'].text}")
    return OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, pool_size=args.pool_size)
    lines = [f"{report['suite']}: {report['cases']} cases, {len(report['failures'])} failures "
             f"({report['wall_time']} s)"]
    lines += [f"  FAIL {json.dumps(f, sort_keys=True)}" for f in report["failures"][:20]]
    _emit(args, report, "\n".join(lines))
    return OK if not report["failures"] else NEGATIVE


def cmd_calculus_check(args) -> int:
    with open(args.file, encoding="utf-8") as handle:
        text = handle.read()
    try:
        calc = parse_calculus(text)
    except CalculusError as err:
        payload = {"file": args.file, "ok": False, "error": type(err).__name__, "message": str(err),
                   "violations": getattr(err, "violations", [])[:20]}
        _emit(args, payload, f"{type(err).__name__}: {err}")
        return NEGATIVE
    pool = Pool.for_calculus(calc, max_size=args.pool_size if args.pool_size is not None else 4, max_width=2)
    violations = validate_order(calc, pool.sequents())
    rows = [{"rule": r.name, **calc.classes[r.name].to_json()} for r in (*calc.axioms, *calc.rules)]
    payload = {"file": args.file, "calculus": calc.name, "ok": not violations, "rules": rows,
               "order": calc.order.describe(), "pool": pool.bounds(), "violations": violations[:20]}
    lines = [f"{calc.name}: parsed, {len(calc.rules)} rules, {len(calc.axioms)} axioms, order {calc.order.describe()}"]
    lines += [f"  {r.name}: {calc.classes[r.name]}" for r in (*calc.axioms, *calc.rules)]
    lines.append(f"order check: {len(violations)} violations over {len(pool.sequents())} sequents")
    lines += [f"  {v['detail']}" for v in violations[:20]]
    _emit(args, payload, "\n".join(lines))
    return OK if not violations else NEGATIVE


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON payloads")
    common.add_argument("--budget", type=int, help="proof-search node limit")
    common.add_argument("--max-parts", type=int, help="largest partition arity for interpolants")
    common.add_argument("--size-ceiling", type=int, help="abort interpolants larger than this many nodes")
    common.add_argument("--seed", type=int, help="seed for sampled suites")
    common.add_argument("--pool-size", type=int, help="sequent size bound for generated pools")

    parser = argparse.ArgumentParser(prog="seqinterp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify every rule of a calculus")
    p.add_argument("calculus", help="built-in name or .seq path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("prove", parents=[common], help="search for a proof")
    p.add_argument("calculus")
    p.add_argument("sequent")
    p.add_argument("--force-budget", action="store_true",
                   help="search even if the calculus order fails validation; the budget is the only guard")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("interpolate", parents=[common], help="uniform interpolant of a sequent")
    p.add_argument("calculus")
    p.add_argument("sequent")
    p.add_argument("-p", "--atom", required=True)
    side = p.add_mutually_exclusive_group()
    side.add_argument("--forall", action="store_true", help="left interpolant (default)")
    side.add_argument("--exists", action="store_true", help="right interpolant")
    p.add_argument("--mode", choices=MODES)
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("uip", parents=[common], help="pre- and post-interpolants of a formula")
    p.add_argument("calculus")
    p.add_argument("formula")
    p.add_argument("-p", "--atom", required=True)
    p.add_argument("--mode", choices=MODES)
    p.set_defaults(func=cmd_uip)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("calculus-check", parents=[common], help="parse, classify and order-check a DSL file")
    p.add_argument("file")
    p.set_defaults(func=cmd_calculus_check)
    return parser


def _apply_env(args) -> None:
    args.budget = args.budget if args.budget is not None else _env_int("BUDGET", DEFAULT_BUDGET)
    args.max_parts = args.max_parts if args.max_parts is not None else _env_int("MAX_PARTS", None)
    args.size_ceiling = (args.size_ceiling if args.size_ceiling is not None
                         else _env_int("SIZE_CEILING", DEFAULT_SIZE_CEILING))
    args.seed = args.seed if args.seed is not None else _env_int("SEED", 0)
    args.pool_size = args.pool_size if args.pool_size is not None else _env_int("POOL_SIZE", None)
    for name in ("budget", "size_ceiling", "max_parts", "pool_size"):
        value = getattr(args, name)
        if value is not None and value < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _apply_env(args)
        return args.func(args)
    except (UsageError, ParseError, CalculusError, OSError,
            BudgetExceeded, InterpolantTooLarge, RecursionInvariantViolation) as err:
        print(f"error: {err}", file=sys.stderr)
    return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
