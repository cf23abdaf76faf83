"""Property harness: bounded pools, independent oracles and the test suites.

Every suite returns a JSON-serialisable report
``{suite, cases, failures, seed, bounds, wall_time}`` plus suite-specific
extras.  Pools are enumerated exhaustively and deterministically; only the
cut-admissibility suite samples, from a seeded ``random.Random``.
"""

from __future__ import annotations

import random
import time
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Optional, Sequence, Union

from .engine import Prover, connectives_of, replay, validate_order
from .errors import BudgetExceeded, CalculusError, NonTerminatingError
from .interp import (
    EXISTS,
    FORALL,
    STRONG,
    WEAK,
    Interpolator,
    default_mode,
    simplify,
)
from .schema import (
    Calculus,
    builtin_names,
    classify_rule,
    load_builtin,
    parse_calculus,
    parse_schema,
)
from .syntax import (
    AND,
    BOT,
    IMP,
    ONE,
    OR,
    PLUS,
    TIMES,
    TOP,
    ZERO,
    Atom,
    Bin,
    Box,
    Const,
    FMultiset,
    Formula,
    Sequent,
    as_formula,
    as_sequent,
    compose,
    is_p_free,
    substitute_atom,
    tilde,
)

CONSTANTS = (ZERO, ONE, TOP, BOT)
BINARY = (AND, OR, IMP, TIMES, PLUS)


# ---------------------------------------------------------------------- pools

class Pool:
    """Exhaustive bounded enumeration of formulas, multisets and sequents.

    ``max_size`` bounds the total node count of a sequent (a formula of size
    3 is one connective over two leaves; ``~p`` has size 3).  ``max_width``
    bounds the number of formula occurrences.  Enumeration order depends only
    on the constructor arguments.
    """

    def __init__(self, atoms: Sequence[str] = ("p", "q"), max_size: int = 3, max_width: int = 3,
                 mode: str = "single", connectives: Iterable[str] = (AND, OR, IMP, TIMES),
                 constants: Iterable[Formula] = CONSTANTS, boxes: bool = False, seed: int = 0):
        self.atoms = tuple(atoms)
        self.max_size = max_size
        self.max_width = max_width
        self.mode = mode
        self.connectives = tuple(op for op in BINARY if op in set(connectives))
        self.constants = tuple(constants)
        self.boxes = boxes
        self.seed = seed

    @classmethod
    def for_calculus(cls, calc: Calculus, atoms: Sequence[str] = ("p", "q"), max_size: int = 3,
                     max_width: int = 3, seed: int = 0, constants: Iterable[Formula] = CONSTANTS) -> "Pool":
        conns = connectives_of(calc)
        return cls(atoms, max_size, max_width, calc.mode, [op for op in BINARY if op in conns],
                   constants, "[]" in conns, seed)

    def bounds(self) -> dict:
        return {
            "atoms": list(self.atoms),
            "max_size": self.max_size,
            "max_width": self.max_width,
            "mode": self.mode,
            "connectives": list(self.connectives) + (["[]"] if self.boxes else []),
            "constants": [c.text for c in self.constants],
        }

    # formulas ---------------------------------------------------------------

    def leaves(self, exclude: Optional[str] = None) -> tuple[Formula, ...]:
        return tuple(Atom(a) for a in self.atoms if a != exclude) + self.constants

    def formulas_of_size(self, n: int, exclude: Optional[str] = None) -> tuple[Formula, ...]:
        return self._of_size(n, exclude)

    @lru_cache(maxsize=None)
    def _of_size(self, n: int, exclude: Optional[str]) -> tuple[Formula, ...]:
        if n <= 0:
            return ()
        if n == 1:
            return self.leaves(exclude)
        out = []
        if self.boxes:
            out.extend(Box(f) for f in self._of_size(n - 1, exclude))
        for left_size in range(1, n - 1):
            lefts = self._of_size(left_size, exclude)
            rights = self._of_size(n - 1 - left_size, exclude)
            for op in self.connectives:
                out.extend(Bin(op, a, b) for a in lefts for b in rights)
        return tuple(out)

    def formulas(self, max_size: Optional[int] = None, exclude: Optional[str] = None) -> list[Formula]:
        bound = self.max_size if max_size is None else max_size
        return [f for n in range(1, bound + 1) for f in self._of_size(n, exclude)]

    # multisets and sequents -------------------------------------------------------

    def multisets(self, max_size: Optional[int] = None, exclude: Optional[str] = None,
                  max_width: Optional[int] = None) -> list[FMultiset]:
        return list(self._multisets(self.max_size if max_size is None else max_size, exclude,
                                    self.max_width if max_width is None else max_width))

    @lru_cache(maxsize=None)
    def _multisets(self, budget: int, exclude: Optional[str], width: int) -> tuple[FMultiset, ...]:
        forms = self.formulas(budget, exclude)
        out = []

        def grow(start: int, chosen: list, left: int) -> None:
            out.append(FMultiset(chosen))
            if len(chosen) == width:
                return
            for i in range(start, len(forms)):
                if forms[i].size > left:
                    break  # formulas come in increasing size
                chosen.append(forms[i])
                grow(i, chosen, left - forms[i].size)
                chosen.pop()

        grow(0, [], budget)
        return tuple(out)

    def sequents(self, max_size: Optional[int] = None, exclude: Optional[str] = None,
                 suc_empty: bool = False) -> list[Sequent]:
        bound = self.max_size if max_size is None else max_size
        out = []
        for ant in self._multisets(bound, exclude, self.max_width):
            left = bound - sum(f.size for f in ant)
            room = self.max_width - len(ant)
            if suc_empty or room == 0:
                out.append(Sequent(ant, FMultiset()))
                continue
            width = 1 if self.mode == "single" else room
            for suc in self._multisets(left, exclude, width):
                out.append(Sequent(ant, suc))
        return out

    def side_sequents(self, p: str, succedent: bool) -> list[Sequent]:
        """p-free (Gamma => Delta) contexts; Delta is empty unless ``succedent``."""
        return self.sequents(exclude=p, suc_empty=not succedent)


# --------------------------------------------------------------------- reports

def _report(suite: str, cases: int, failures: list, seed: Optional[int], bounds: dict,
            started: float, **extra) -> dict:
    out = {
        "suite": suite,
        "cases": cases,
        "failures": failures,
        "seed": seed,
        "bounds": bounds,
        "wall_time": round(time.perf_counter() - started, 3),
    }
    out.update(extra)
    return out


def passed(report: dict) -> bool:
    return not report["failures"]


# ------------------------------------------------------------------- check_uip

def check_uip(calc: Calculus, s: Union[str, Sequent], p: Union[str, Atom], mode: Optional[str] = None,
              pool: Optional[Pool] = None, *, interpolator: Optional[Interpolator] = None,
              prover: Optional[Prover] = None, overrides: Optional[dict] = None) -> dict:
    """Check the interpolation conditions for one sequent.

    ``overrides`` may replace the computed interpolants (keys "forall" and
    "exists"), which is how corrupted interpolants are tested.
    """
    started = time.perf_counter()
    s = as_sequent(s)
    p = p.name if isinstance(p, Atom) else p
    mode = mode or default_mode(calc)
    pool = pool or Pool.for_calculus(calc)
    interp = interpolator or Interpolator(calc, p, mode)
    prover = prover or Prover(calc)
    overrides = overrides or {}
    failures: list[dict] = []
    cases = 0

    def fail(clause: str, detail: str, side: Optional[Sequent] = None) -> None:
        entry = {"clause": clause, "sequent": s.text, "detail": detail}
        if side is not None:
            entry["gamma"] = [f.text for f in side.ant]
            entry["delta"] = [f.text for f in side.suc]
        failures.append(entry)

    def derivable(t: Sequent) -> bool:
        return prover.derivable(t)

    fa = overrides.get(FORALL) or interp.forall(s)
    has_exists = mode == STRONG or not s.suc
    ex = (overrides.get(EXISTS) or interp.exists(s)) if has_exists else None
    weak_guard = interp.exists(tilde(s)) if mode == WEAK else None

    for name, f in ((FORALL, fa), (EXISTS, ex)):
        if f is not None and not is_p_free(f, p):
            fail("p-free", f"{name} interpolant {f.text} mentions {p}")

    cases += 1
    tree = prover.tree(compose(s, Sequent([fa], [])))
    if tree is None:
        fail("i", f"{compose(s, Sequent([fa], [])).text} is not derivable")
    elif not replay(tree):
        fail("i", "witness proof does not replay")
    if ex is not None:
        cases += 1
        root = compose(s, Sequent([], [ex]))
        tree = prover.tree(root)
        if tree is None:
            fail("iii", f"{root.text} is not derivable")
        elif not replay(tree):
            fail("iii", "witness proof does not replay")

    # (ii), (ii') and (ii'')
    for side in pool.side_sequents(p, succedent=mode == STRONG):
        joined = compose(s, side)
        if not joined.is_valid(calc.mode):
            continue
        cases += 1
        if not derivable(joined):
            continue
        extra = [weak_guard] if weak_guard is not None else []
        target = Sequent(list(side.ant) + extra, [fa] + list(side.suc))
        if not derivable(target):
            clause = {WEAK: "ii'", STRONG: "ii''"}.get(mode, "ii")
            fail(clause, f"{joined.text} is derivable but {target.text} is not", side)

    # (iv)
    if ex is not None:
        for side in pool.side_sequents(p, succedent=True):
            joined = compose(s, side)
            if not joined.is_valid(calc.mode):
                continue
            cases += 1
            if derivable(joined) and not derivable(Sequent([ex] + list(side.ant), side.suc)):
                fail("iv", f"{joined.text} is derivable but {ex.text}, {side.text} is not", side)

    return {
        "sequent": s.text,
        "atom": p,
        "mode": mode,
        "forall": fa.text,
        "exists": ex.text if ex is not None else None,
        "cases": cases,
        "failures": failures,
        "wall_time": round(time.perf_counter() - started, 3),
    }


def uip_suite(calc: Union[str, Calculus], p: str = "p", mode: Optional[str] = None,
              pool: Optional[Pool] = None, sequents: Optional[Iterable[Sequent]] = None,
              progress: Optional[Callable[[int, int], None]] = None) -> dict:
    """check_uip over every sequent of ``pool`` (or the given ``sequents``)."""
    started = time.perf_counter()
    calc = load_builtin(calc) if isinstance(calc, str) else calc
    mode = mode or default_mode(calc)
    pool = pool or Pool.for_calculus(calc)
    targets = list(sequents) if sequents is not None else pool.sequents()
    interp = Interpolator(calc, p, mode)
    prover = Prover(calc)
    failures = []
    cases = 0
    for i, s in enumerate(targets):
        rep = check_uip(calc, s, p, mode, pool, interpolator=interp, prover=prover)
        cases += rep["cases"]
        failures.extend(rep["failures"])
        if progress is not None:
            progress(i + 1, len(targets))
    return _report(f"uip-{calc.name}-{mode}", cases, failures, pool.seed, pool.bounds(), started,
                   sequents=len(targets))


# ------------------------------------------------------------ classical oracle

def classical_reading(f: Formula) -> Formula:
    """Read * as /\\, + as \\/, 1 as top and 0 as bot."""
    if isinstance(f, Const):
        return {ONE: TOP, ZERO: BOT}.get(f, f)
    if isinstance(f, Bin):
        op = {TIMES: AND, PLUS: OR}.get(f.op, f.op)
        return Bin(op, classical_reading(f.left), classical_reading(f.right))
    if isinstance(f, Box):
        raise ValueError("the classical oracle is only defined for box-free formulas")
    return f


def classical_oracle(phi: Union[str, Formula], p: Union[str, Atom]) -> dict:
    """Quantifier elimination by Boole expansion: pre = phi[top/p] /\\ phi[bot/p], post = ... \\/ ..."""
    name = p.name if isinstance(p, Atom) else p
    phi = classical_reading(as_formula(phi))
    high, low = substitute_atom(phi, name, TOP), substitute_atom(phi, name, BOT)
    return {"pre": Bin(AND, high, low), "post": Bin(OR, high, low)}


def evaluate(f: Formula, valuation: dict) -> bool:
    if isinstance(f, Atom):
        return valuation[f.name]
    if isinstance(f, Const):
        return f in (ONE, TOP)
    if isinstance(f, Box):
        raise ValueError("cannot evaluate a boxed formula classically")
    a, b = evaluate(f.left, valuation), evaluate(f.right, valuation)
    if f.op in (AND, TIMES):
        return a and b
    if f.op in (OR, PLUS):
        return a or b
    return (not a) or b


def _atoms_of(f: Formula) -> set[str]:
    return {leaf.name for leaf in f.leaves if isinstance(leaf, Atom)}


def truth_table_equivalent(f: Formula, g: Formula) -> bool:
    names = sorted(_atoms_of(f) | _atoms_of(g))
    for values in product((False, True), repeat=len(names)):
        valuation = dict(zip(names, values))
        if evaluate(f, valuation) != evaluate(g, valuation):
            return False
    return True


def classical_suite(calc: Union[str, Calculus] = "CPC", p: str = "p", atoms: Sequence[str] = ("p", "q", "r"),
                    max_connectives: int = 3, formulas: Optional[Iterable[Formula]] = None,
                    progress: Optional[Callable[[int, int], None]] = None, chunk: int = 2000) -> dict:
    """Compare logic_uip with the classical oracle on every formula up to the bound.

    Caches are dropped every ``chunk`` formulas to keep memory flat.
    """
    started = time.perf_counter()
    calc = load_builtin(calc) if isinstance(calc, str) else calc
    pool = Pool(atoms, 2 * max_connectives + 1, 1, calc.mode,
                [op for op in BINARY if op in connectives_of(calc)], constants=())
    targets = list(formulas) if formulas is not None else pool.formulas()
    failures = []
    for i, phi in enumerate(targets):
        if i % chunk == 0:
            calc.instance_cache.clear()
            interp = Interpolator(calc, p, STRONG)
            prover = Prover(calc)
        pre = interp.forall(Sequent([], [phi]))
        post = interp.exists(Sequent([phi], []))
        oracle = classical_oracle(phi, p)
        for label, got, want in (("pre", pre, oracle["pre"]), ("post", post, oracle["post"])):
            forward = prover.derivable(Sequent([got], [want]))
            backward = prover.derivable(Sequent([want], [got]))
            if not (forward and backward):
                failures.append({"formula": phi.text, "which": label, "interpolant": got.text,
                                 "oracle": want.text, "forward": forward, "backward": backward})
            elif not truth_table_equivalent(got, want):
                failures.append({"formula": phi.text, "which": label, "interpolant": got.text,
                                 "oracle": want.text, "detail": "provably equivalent but truth tables differ"})
        if progress is not None:
            progress(i + 1, len(targets))
    return _report(f"classical-{calc.name}", len(targets), failures, None,
                   {"atoms": list(atoms), "max_connectives": max_connectives}, started)


# ------------------------------------------------------------- modal suite

def modal_suite(calc: Union[str, Calculus], p: str = "p", pool: Optional[Pool] = None) -> dict:
    """Fully boxed pool sequents: p-freeness and replaying witnesses for (i) and (iii)."""
    started = time.perf_counter()
    calc = load_builtin(calc) if isinstance(calc, str) else calc
    pool = pool or Pool.for_calculus(calc, max_size=4)
    mode = default_mode(calc)
    interp = Interpolator(calc, p, mode)
    prover = Prover(calc)
    failures = []
    targets = [s for s in pool.sequents() if not s.is_empty()
               and all(isinstance(f, Box) for f in s.formulas())]
    for s in targets:
        checks = [(FORALL, interp.forall(s), compose(s, Sequent([interp.forall(s)], [])))]
        if not s.suc:
            ex = interp.exists(s)
            checks.append((EXISTS, ex, compose(s, Sequent([], [ex]))))
        for kind, f, root in checks:
            if not is_p_free(f, p):
                failures.append({"sequent": s.text, "kind": kind, "detail": f"{f.text} mentions {p}"})
            tree = prover.tree(root)
            if tree is None or not replay(tree):
                failures.append({"sequent": s.text, "kind": kind, "detail": f"no replaying witness for {root.text}"})
    return _report(f"modal-{calc.name}", len(targets), failures, pool.seed, pool.bounds(), started)


# ------------------------------------------------------------ cut admissibility

def check_cut_admissible(calc: Union[str, Calculus], samples: int = 200, seed: int = 0,
                         premise_calculus: Optional[Calculus] = None, pool: Optional[Pool] = None) -> dict:
    """Sample derivable premises (G => A, D) and (G', A => D') and test (G, G' => D, D').

    Premises are proved in ``premise_calculus`` (default: ``calc`` itself) and
    the conclusion in ``calc``.  Candidates are all derivable pool sequents;
    sampling picks a cut formula occurring on both sides, then one sequent of
    each kind, from a seeded generator.
    """
    started = time.perf_counter()
    calc = load_builtin(calc) if isinstance(calc, str) else calc
    source = premise_calculus or calc
    pool = pool or Pool.for_calculus(source, max_size=4)
    rng = random.Random(seed)
    source_prover = Prover(source, force=True)
    prover = source_prover if source is calc else Prover(calc, force=True)

    lefts: dict[Formula, list[Sequent]] = {}
    rights: dict[Formula, list[Sequent]] = {}
    for s in pool.sequents():
        if not source_prover.derivable(s):
            continue
        for f in s.suc.distinct():
            lefts.setdefault(f, []).append(s)
        for f in s.ant.distinct():
            rights.setdefault(f, []).append(s)
    cut_formulas = sorted(set(lefts) & set(rights), key=lambda f: f.text)
    failures = []
    cases = 0
    if cut_formulas:
        for _ in range(samples):
            a = rng.choice(cut_formulas)
            left = rng.choice(lefts[a])
            right = rng.choice(rights[a])
            conclusion = compose(Sequent(left.ant, left.suc.remove_one(a)),
                                 Sequent(right.ant.remove_one(a), right.suc))
            if not conclusion.is_valid(calc.mode):
                # single-conclusion: the left premise's succedent is exactly A
                continue
            cases += 1
            try:
                ok = prover.derivable(conclusion)
            except BudgetExceeded:
                ok = False
            if not ok:
                failures.append({"cut_formula": a.text, "left": left.text, "right": right.text,
                                 "conclusion": conclusion.text})
    return _report(f"cut-{calc.name}", cases, failures, seed, pool.bounds(), started,
                   premise_calculus=source.name, candidates=len(cut_formulas))


# ------------------------------------------------------------- golden table

# (family, mode, rule name, schema text, expected classification)
GOLDEN: list[tuple[str, str, str, str, str]] = [
    ("FLe", "single", "id", "axiom a => a", "FocusedAxiom(1)"),
    ("FLe", "single", "one", "axiom => 1", "FocusedAxiom(2)"),
    ("FLe", "single", "zero", "axiom 0 =>", "FocusedAxiom(3)"),
    ("FLe", "single", "bot", "axiom $G, bot => $D", "FocusedAxiom(4)"),
    ("FLe", "single", "top", "axiom $G => top", "FocusedAxiom(5)"),
    ("FLe", "single", "L1", "$G => $D --- $G, 1 => $D", "LeftSemiAnalytic"),
    ("FLe", "single", "R0", "$G => --- $G => 0", "RightSemiAnalytic"),
    ("FLe", "single", "L/\\1", "$G, a => $D --- $G, a /\\ b => $D", "LeftSemiAnalytic"),
    ("FLe", "single", "R/\\", "$G => a ; $G => b --- $G => a /\\ b", "RightSemiAnalytic"),
    ("FLe", "single", "L\\/", "$G, a => $D ; $G, b => $D --- $G, a \\/ b => $D", "LeftSemiAnalytic"),
    ("FLe", "single", "R\\/1", "$G => a --- $G => a \\/ b", "RightSemiAnalytic"),
    ("FLe", "single", "L*", "$G, a, b => $D --- $G, a * b => $D", "LeftSemiAnalytic"),
    ("FLe", "single", "R*", "$G => a ; $S => b --- $G, $S => a * b", "RightSemiAnalytic"),
    ("FLe", "single", "L->", "$G => a ; $S, b => $D --- $G, $S, a -> b => $D", "LeftSemiAnalytic"),
    ("FLe", "single", "R->", "$G, a => b --- $G => a -> b", "RightSemiAnalytic"),
    ("FLew", "single", "Lw", "$G => $D --- $G, a => $D", "LeftSemiAnalytic"),
    ("FLew", "single", "Rw", "$G => --- $G => a", "RightSemiAnalytic"),
    ("CFLe", "multi", "L->", "$G => a, $D ; $S, b => $L --- $G, $S, a -> b => $D, $L", "LeftMultiSemiAnalytic"),
    ("CFLe", "multi", "R*", "$G => a, $D ; $S => b, $L --- $G, $S => a * b, $D, $L", "RightMultiSemiAnalytic"),
    ("CFLe", "multi", "L+", "$G, a => $D ; $S, b => $L --- $G, $S, a + b => $D, $L", "LeftMultiSemiAnalytic"),
    ("CFLe", "multi", "R+", "$G => a, b, $D --- $G => a + b, $D", "RightMultiSemiAnalytic"),
    ("CFLe", "multi", "top", "axiom $G => top, $D", "FocusedAxiom(5)"),
    ("CFLew", "multi", "Lw", "$G => $D --- $G, a => $D", "LeftMultiSemiAnalytic"),
    ("CFLew", "multi", "Rw", "$G => $D --- $G => a, $D", "RightMultiSemiAnalytic"),
    ("Dyckhoff", "single", "L/\\", "$G, a, b => $D --- $G, a /\\ b => $D", "LeftSemiAnalytic"),
    ("Dyckhoff", "single", "L/\\->", "$G, a -> (b -> c) => $D --- $G, a /\\ b -> c => $D", "LeftSemiAnalytic"),
    ("Dyckhoff", "single", "L\\/->", "$G, a -> c, b -> c => $D --- $G, a \\/ b -> c => $D", "LeftSemiAnalytic"),
    ("Dyckhoff", "single", "R->", "$G, a => b --- $G => a -> b", "RightSemiAnalytic"),
    ("Dyckhoff", "single", "L->->", "$G, b -> c => a -> b ; $G, c => $D --- $G, (a -> b) -> c => $D",
     "ContextSharingSemiAnalytic"),
    ("Dyckhoff", "single", "Lp->", "$G => p ; $G, b => $D --- $G, p -> b => $D where p atomic",
     "ContextSharingSemiAnalytic"),
    # The textbook form keeps the atom next to the implication in the conclusion.
    ("Dyckhoff", "single", "Lp->textbook", "$G, p, b => $D --- $G, p, p -> b => $D where p atomic",
     "NotSemiAnalytic(OccurrenceViolation, PrincipalShape)"),
    ("Dyckhoff", "single", "At", "axiom $G, p => p where p atomic", "NotSemiAnalytic(AxiomShape)"),
    ("K", "single", "K", "$G => a --- []$G => []a", "ModalK"),
    ("KD", "single", "D", "$G => --- []$G =>", "ModalD"),
    ("K4", "single", "4", "$G, []$G => a --- []$G => []a", "NotSemiAnalytic(ContextShape)"),
    ("cut", "single", "cut", "$G => a ; $S, a => $D --- $G, $S => $D",
     "NotSemiAnalytic(OccurrenceViolation, PrincipalShape)"),
    ("cut", "multi", "cut", "$G => a, $D ; $S, a => $L --- $G, $S => $D, $L",
     "NotSemiAnalytic(OccurrenceViolation, PrincipalShape)"),
    ("linear !", "single", "!w", "$G => $D --- $G, []a => $D", "LeftSemiAnalytic"),
    ("linear !", "single", "!c", "$G, []a, []a => $D --- $G, []a => $D", "LeftSemiAnalytic"),
    ("linear !", "single", "!d", "$G, a => $D --- $G, []a => $D", "LeftSemiAnalytic"),
    ("linear !", "single", "!p", "[]$G => a --- []$G => []a", "NotSemiAnalytic(ContextShape)"),
    ("contraction", "single", "Lc", "$G, a, a => $D --- $G, a => $D", "LeftSemiAnalytic"),
]


def golden_classify(corpus: Optional[Iterable[tuple]] = None) -> dict:
    """Compare classify_rule on every golden entry with its expected class."""
    started = time.perf_counter()
    entries = list(corpus if corpus is not None else GOLDEN)
    failures = []
    rows = []
    for family, mode, name, text, expected in entries:
        is_axiom = text.startswith("axiom ")
        body = text[len("axiom "):] if is_axiom else text
        got = str(classify_rule(parse_schema(name, body, is_axiom), mode))
        rows.append({"family": family, "rule": name, "expected": expected, "got": got})
        if got != expected:
            failures.append(rows[-1])
    return _report("golden", len(entries), failures, None, {"entries": len(entries)}, started, rows=rows)


# ---------------------------------------------------------------- order suite

def order_suite(names: Optional[Iterable[str]] = None, max_size: int = 6, atoms: Sequence[str] = ("p", "q"),
                max_width: int = 2, subsequents: bool = True) -> dict:
    """validate_order over the exhaustive pool of every built-in, plus the FLec rejection.

    Calculi often share rules verbatim.  A rule is checked once per
    (pool, order, mode); the structural clauses once per (pool, order).
    """
    started = time.perf_counter()
    failures = []
    cases = 0
    per_calculus = {}
    pools: dict = {}
    done: dict = {}
    for name in names or builtin_names():
        calc = load_builtin(name)
        pool = Pool.for_calculus(calc, atoms, max_size, max_width, constants=(ONE, BOT))
        key = repr(sorted(pool.bounds().items()))
        sequents = pools.setdefault(key, pool.sequents())
        shared = (key, calc.order, calc.mode)
        seen = done.setdefault(shared, {})
        fresh = [r for r in calc.rules if (r.premises, r.conclusion) not in seen]
        violations = validate_order(calc, sequents, subsequents and not seen, fresh, unboxing=not seen) \
            if fresh or not seen else []
        for r in fresh:
            seen[(r.premises, r.conclusion)] = [v for v in violations if v.get("rule") == r.name]
        seen.setdefault("structural", [v for v in violations if "rule" not in v])
        violations = seen["structural"] + [v for r in calc.rules for v in seen[(r.premises, r.conclusion)]]
        cases += len(sequents)
        per_calculus[calc.name] = {"sequents": len(sequents), "violations": len(violations),
                                   "rules_checked": len(fresh)}
        failures.extend({"calculus": calc.name, **v} for v in violations[:20])
    try:
        parse_calculus(FLEC_TEXT)
        failures.append({"calculus": "FLec", "detail": "contraction calculus was accepted"})
    except NonTerminatingError as err:
        per_calculus["FLec"] = {"rejected": str(err)}
    return _report("order", cases, failures, None,
                   {"atoms": list(atoms), "max_size": max_size, "max_width": max_width}, started,
                   calculi=per_calculus)


FLEC_TEXT = """\
calculus FLec single
order additive
axiom id: a => a
rule L->: $G => a ; $S, b => $D --- $G, $S, a -> b => $D
rule R->: $G, a => b --- $G => a -> b
rule Lc: $G, a, a => $D --- $G, a => $D
"""


# ------------------------------------------------------------ simplifier

# (name, instance, expected result, calculus); each instance is checked for
# derivability in both directions and for being rewritten as stated.
SIMPLIFIER_RULES: list[tuple[str, str, str, str]] = [
    ("times-unit", "1 * q", "q", "FLe"),
    ("times-unit-right", "(q -> r) * 1", "q -> r", "FLe"),
    ("and-unit", "q /\\ top", "q", "FLe"),
    ("or-unit", "bot \\/ q", "q", "FLe"),
    ("and-idempotent", "q /\\ q", "q", "FLe"),
    ("or-idempotent", "(q * r) \\/ (q * r)", "q * r", "FLe"),
    ("and-commute", "r /\\ q", "q /\\ r", "FLe"),
    ("or-commute", "r \\/ q", "q \\/ r", "FLe"),
    ("times-commute", "r * q", "q * r", "FLe"),
    ("and-assoc", "q /\\ (r /\\ s)", "q /\\ r /\\ s", "FLe"),
    ("or-assoc", "(q \\/ r) \\/ s", "q \\/ r \\/ s", "FLe"),
    ("times-assoc", "q * (r * s)", "q * r * s", "FLe"),
    ("and-absorb", "bot /\\ q", "bot", "FLe"),
    ("or-absorb", "q \\/ top", "top", "FLe"),
    ("times-bot", "q * bot", "bot", "FLe"),
    ("top-times-top", "top * top", "top", "FLe"),
    ("lattice-absorb-and", "q /\\ (q \\/ r)", "q", "FLe"),
    ("lattice-absorb-or", "q \\/ (q /\\ r)", "q", "FLe"),
    ("one-implies", "1 -> q", "q", "FLe"),
    ("implies-top", "q -> top", "top", "FLe"),
    ("bot-implies", "bot -> q", "top", "FLe"),
    ("top-implies-bot", "top -> bot", "bot", "FLe"),
    ("zero-as-bot", "q \\/ 0", "q", "IPC"),
    ("one-as-top", "q /\\ 1", "q", "FLew"),
    ("top-times-unit", "q * top", "q", "FLew"),
    ("top-implies-unit", "top -> q", "q", "FLew"),
    ("times-no-contraction", "q * q", "q * q", "FLe"),
    ("plus-unit", "0 + q", "q", "CFLe"),
    ("plus-commute", "r + q", "q + r", "CFLe"),
    ("plus-top", "q + top", "top", "CFLe"),
    ("lattice-absorb-block", "(q /\\ r) \\/ (q /\\ r /\\ s)", "q /\\ r", "FLe"),
    ("double-negation", "~~q", "q", "CFLe"),
    ("bot-as-plus-unit", "bot + q", "q", "CPC"),
]


def certify_simplifier(sample: int = 100, seed: int = 0) -> dict:
    """Certify every rewrite rule, then check raw and simplified interpolants are inter-derivable."""
    started = time.perf_counter()
    failures = []
    provers: dict[str, Prover] = {}
    for name, lhs_text, rhs_text, calc_name in SIMPLIFIER_RULES:
        if calc_name not in provers:
            provers[calc_name] = Prover(load_builtin(calc_name))
        prover = provers[calc_name]
        lhs, rhs = as_formula(lhs_text), as_formula(rhs_text)
        got = simplify(prover.calc, lhs)
        if got is not rhs:
            failures.append({"rule": name, "detail": f"{lhs.text} simplified to {got.text}, expected {rhs.text}"})
        for a, b in ((lhs, rhs), (rhs, lhs)):
            if not prover.derivable(Sequent([a], [b])):
                failures.append({"rule": name, "detail": f"{a.text} => {b.text} not derivable in {calc_name}"})

    rng = random.Random(seed)
    cases = len(SIMPLIFIER_RULES)
    checked = 0
    for calc_name in ("FLe", "FLew", "CFLe"):
        calc = load_builtin(calc_name)
        pool = Pool.for_calculus(calc)
        chosen = rng.sample(pool.sequents(), min(sample // 3 + 1, len(pool.sequents())))
        raw = Interpolator(calc, "p", simplify_results=False)
        prover = Prover(calc)
        for s in chosen:
            if checked >= sample:
                break
            kinds = [FORALL] + ([EXISTS] if raw.mode == STRONG or not s.suc else [])
            for kind in kinds:
                before = raw.forall(s) if kind == FORALL else raw.exists(s)
                after = simplify(calc, before)
                if not (prover.derivable(Sequent([before], [after])) and prover.derivable(Sequent([after], [before]))):
                    failures.append({"sequent": s.text, "kind": kind, "calculus": calc_name,
                                     "detail": f"{before.text} and {after.text} are not inter-derivable"})
            checked += 1
    return _report("simplifier", cases + checked, failures, seed, {"sample": sample}, started,
                   rules=len(SIMPLIFIER_RULES), sampled=checked)


# ------------------------------------------------------------ suite registry

def _sized(pool_size: Optional[int], default: int) -> int:
    return default if pool_size is None else pool_size


def _uip_plain(pool_size: Optional[int] = None, **_) -> dict:
    reports = []
    for name in ("FLe", "FLew"):
        calc = load_builtin(name)
        reports.append(uip_suite(calc, mode="plain", pool=Pool.for_calculus(calc, max_size=_sized(pool_size, 3))))
    return _merge("uip-plain", reports)


def _uip_weak(pool_size: Optional[int] = None, **_) -> dict:
    calc = load_builtin("IPC")
    return uip_suite(calc, mode="weak", pool=Pool.for_calculus(calc, max_size=_sized(pool_size, 3)))


def _modal(pool_size: Optional[int] = None, **_) -> dict:
    reports = []
    for name in MODAL_BUILTINS:
        calc = load_builtin(name)
        reports.append(modal_suite(calc, pool=Pool.for_calculus(calc, max_size=_sized(pool_size, 4))))
    return _merge("modal", reports)


# calculus name -> its implication-left rule, removed by the mutation run
CUT_BUILTINS = {"FLe": "L->", "FLew": "L->", "CFLe": "L->", "CFLew": "L->", "IPC": "Lp->", "CPC": "L->"}
MODAL_BUILTINS = ("FLe-K", "FLe-KD", "FLew-K", "FLew-KD", "CFLe-K", "CFLe-KD", "CFLew-K", "CFLew-KD")


def _cut(seed: int = 0, samples: int = 200, **_) -> dict:
    return _merge("cut", [check_cut_admissible(name, samples, seed) for name in CUT_BUILTINS])


def cut_mutation_suite(seed: int = 0, samples: int = 200, faithful: bool = False) -> dict:
    """Remove the implication-left rule and rerun the cut sampler.

    By default premises are drawn from the intact calculus and only the cut
    conclusion is searched in the mutant; ``faithful`` draws the premises from
    the mutant too.
    """
    reports = []
    for name, rule in CUT_BUILTINS.items():
        calc = load_builtin(name)
        mutant = calc.without_rules([rule], f"{calc.name}-without-{rule}")
        reports.append(check_cut_admissible(mutant, samples, seed, premise_calculus=None if faithful else calc))
    return _merge("cut-mutation-faithful" if faithful else "cut-mutation", reports)


def _merge(suite: str, reports: list[dict]) -> dict:
    return {
        "suite": suite,
        "cases": sum(r["cases"] for r in reports),
        "failures": [f for r in reports for f in r["failures"]],
        "seed": reports[0]["seed"] if reports else None,
        "bounds": reports[0]["bounds"] if reports else {},
        "wall_time": round(sum(r["wall_time"] for r in reports), 3),
        "parts": [{k: v for k, v in r.items() if k != "failures"} for r in reports],
    }


SUITES: dict[str, Callable[..., dict]] = {
    "golden": lambda **_: golden_classify(),
    "order": lambda pool_size=None, **_: order_suite(max_size=_sized(pool_size, 6)),
    "uip-plain": _uip_plain,
    "uip-weak": _uip_weak,
    "classical": lambda **_: classical_suite(),
    "modal": _modal,
    "cut": _cut,
    "cut-mutation": lambda seed=0, **_: cut_mutation_suite(seed),
    "simplifier": lambda seed=0, **_: certify_simplifier(seed=seed),
}


def run_suite(name: str, **options) -> dict:
    try:
        suite = SUITES[name]
    except KeyError:
        raise CalculusError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return suite(**options)


__all__ = [
    "Pool", "check_uip", "uip_suite", "classical_oracle", "classical_suite", "truth_table_equivalent",
    "modal_suite", "check_cut_admissible", "golden_classify", "order_suite", "certify_simplifier",
    "GOLDEN", "SIMPLIFIER_RULES", "SUITES", "run_suite", "passed", "cut_mutation_suite",
]
