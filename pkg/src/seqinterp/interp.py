"""Uniform interpolants for sequents.

Three recursions are provided, selected by ``mode``:

``plain``
    single-conclusion calculi built from semi-analytic rules;
``weak``
    single-conclusion calculi that also use context-sharing rules and admit
    weakening and the context-sharing implication rule;
``strong``
    multi-conclusion calculi, where the right interpolant is the negation of
    the left one.

The base case comes from the calculus's own focused axioms.  Every recursive
call must land on a sequent of strictly smaller measure; the only exception is
the right interpolant of the same sequent, which is always computed first.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .engine import ProofTree, Prover, match_backward, measure
from .errors import InterpolantTooLarge, ModeError, RecursionInvariantViolation
from .schema import (
    CONTEXT_SHARING,
    LEFT,
    LEFT_MULTI,
    MODAL_D,
    MODAL_K,
    RIGHT,
    RIGHT_MULTI,
    Calculus,
    MetaVar,
    axiom_group,
    axiom_instances,
    group_instances,
    splits,
    superset_instances,
)
from .syntax import (
    AND,
    BOT,
    EMPTY,
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
    FMultiset,
    Formula,
    Sequent,
    as_formula,
    as_sequent,
    big_and,
    big_or,
    big_plus,
    big_times,
    compose,
    imp,
    is_p_free,
    neg,
    p_part,
    tilde,
)

PLAIN, WEAK, STRONG = "plain", "weak", "strong"
MODES = (PLAIN, WEAK, STRONG)
FORALL, EXISTS = "forall", "exists"
DEFAULT_SIZE_CEILING = 100_000


# ---------------------------------------------------------------- partitions

def partitions(s: Sequent, n: int, kind: str = "nontrivial") -> Iterator[tuple[Sequent, ...]]:
    """Ordered splits of ``s`` into ``n`` parts with ``compose`` of the parts equal to ``s``.

    ``kind`` selects the side conditions:

    * ``nontrivial``: every part is non-empty;
    * ``exists``: as nontrivial, and every succedent is empty;
    * ``forall``: parts after the first have empty succedent and are non-empty,
      the first part differs from ``s`` and may be empty only when ``s`` has
      an empty succedent.
    """
    if n < 2:
        raise ValueError("partitions need at least two parts")
    seen = set()
    for ants in splits(s.ant, n):
        for sucs in splits(s.suc, n):
            parts = tuple(Sequent(a, b) for a, b in zip(ants, sucs))
            if parts in seen or not _admissible(s, parts, kind):
                continue
            seen.add(parts)
            yield parts


def _admissible(s: Sequent, parts: tuple[Sequent, ...], kind: str) -> bool:
    if kind in ("nontrivial", "exists"):
        if any(part.is_empty() for part in parts):
            return False
        return kind == "nontrivial" or all(not part.suc for part in parts)
    if kind == "forall":
        first, rest = parts[0], parts[1:]
        if first == s or any(part.suc or part.is_empty() for part in rest):
            return False
        return not first.is_empty() or not s.suc
    raise ValueError(f"unknown partition kind {kind!r}")


def _canonical_parts(s: Sequent, n: int, kind: str) -> Iterator[tuple[Sequent, ...]]:
    """Partitions up to reordering of the interchangeable parts."""
    seen = set()
    for parts in partitions(s, n, kind):
        if kind == "forall":
            key = (parts[0], tuple(sorted(parts[1:], key=lambda t: t.text)))
        else:
            key = tuple(sorted(parts, key=lambda t: t.text))
        if key not in seen:
            seen.add(key)
            yield parts


# ------------------------------------------------------- focused-axiom base

def _axioms_of_kind(calc: Calculus, *kinds: int):
    for ax in calc.axioms:
        rc = calc.classes[ax.name]
        if rc.axiom_kind in kinds:
            yield ax, rc.axiom_kind


def is_axiom_instance(calc: Calculus, s: Sequent, *kinds: int) -> bool:
    return any(axiom_instances(ax, s) for ax, _ in _axioms_of_kind(calc, *kinds))


def _has_group_in(calc: Calculus, kind: int, ms: FMultiset) -> bool:
    return any(True for ax, _ in _axioms_of_kind(calc, kind) for _ in group_instances(ax, kind, ms))


def _check_focused(calc: Calculus) -> None:
    bad = [ax.name for ax in calc.axioms if calc.classes[ax.name].axiom_kind is None]
    if bad:
        raise ModeError(f"axioms {', '.join(bad)} of {calc.name} are not focused; interpolation needs focused axioms")


def axiom_exists(calc: Calculus, t: Union[str, Sequent], p: Union[str, Atom]) -> Formula:
    """Right interpolant of ``t`` (empty succedent) relative to the focused axioms."""
    t = as_sequent(t)
    if t.suc:
        raise ModeError("the right interpolant is only defined for sequents with empty succedent")
    _check_focused(calc)
    pi = t.ant
    pi_p = p_part(pi, p)
    first = big_times(list(pi_p) + ([TOP] if pi != pi_p else []))
    conjuncts = [first]
    if is_axiom_instance(calc, Sequent(pi, EMPTY), 3):
        conjuncts.append(ZERO)
    if _has_group_in(calc, 4, pi):
        conjuncts.append(BOT)
    return big_and(conjuncts)


def axiom_forall(calc: Calculus, s: Union[str, Sequent], p: Union[str, Atom]) -> Formula:
    """Left interpolant of ``s`` relative to the focused axioms."""
    s = as_sequent(s)
    _check_focused(calc)
    sigma, lam = s.ant, s.suc
    sigma_p = p_part(sigma, p)
    disjuncts = []
    if is_axiom_instance(calc, Sequent((sigma - sigma_p) + FMultiset([BOT]), lam), 4):
        disjuncts.append(imp(big_times(sigma_p), BOT))
    if not lam:
        for ax, kind in _axioms_of_kind(calc, 3):
            candidates = superset_instances(ax, kind, sigma) if sigma else _ground_group(ax, kind)
            for beta in candidates:
                if is_p_free(beta, p):
                    disjuncts.append(big_times(beta - sigma))
    if not sigma and len(lam) == 1:
        (phi,) = lam
        if is_p_free(phi, p) and is_axiom_instance(calc, Sequent([phi], [phi]), 1):
            disjuncts.append(phi)
    if is_axiom_instance(calc, s, 1, 2, 3):
        disjuncts.append(ONE)
    if _has_group_in(calc, 4, sigma) or _has_group_in(calc, 5, lam):
        disjuncts.append(TOP)
    return big_or(disjuncts)


def _ground_group(ax, kind) -> Iterator[FMultiset]:
    # Schemas with meta-variables have infinitely many instances; only ground ones are listed.
    group, _ = axiom_group(ax, kind)
    if not any(isinstance(leaf, MetaVar) for f in group for leaf in f.leaves):
        yield FMultiset(group)


def axiom_exists_strong(calc: Calculus, s: Union[str, Sequent], p: Union[str, Atom]) -> Formula:
    """Strong right interpolant of ``s`` relative to the focused axioms (multi-conclusion)."""
    s = as_sequent(s)
    if calc.mode != "multi":
        raise ModeError("strong interpolants need a multi-conclusion calculus")
    _check_focused(calc)
    sigma, lam = s.ant, s.suc
    sigma_p, lam_p = p_part(sigma, p), p_part(lam, p)
    # Without weakening the succedent can only be absorbed by top and the
    # antecedent only discharged through bot.
    weakening = calc.flag("weakening_admissible")
    with_top = sigma != sigma_p or (bool(lam) and not weakening)
    conjuncts = [big_times(list(sigma_p) + ([TOP] if with_top else []))]
    if lam:
        with_bot = lam != lam_p or (bool(sigma) and not weakening)
        conjuncts.append(neg(big_plus(([BOT] if with_bot else []) + list(lam_p))))
    if is_axiom_instance(calc, s, 1, 2, 3):
        conjuncts.append(ZERO)
    if is_axiom_instance(calc, s, 4, 5):
        conjuncts.append(BOT)
    return big_and(conjuncts)


def axiom_forall_strong(calc: Calculus, s: Union[str, Sequent], p: Union[str, Atom]) -> Formula:
    return neg(axiom_exists_strong(calc, s, p))


# ---------------------------------------------------------------- simplifier

def _flatten(op: str, f: Formula) -> list[Formula]:
    if isinstance(f, Bin) and f.op == op:
        return _flatten(op, f.left) + _flatten(op, f.right)
    return [f]


def _lattice(op: str, parts: list[Formula]) -> Formula:
    unit, zero = (TOP, BOT) if op == AND else (BOT, TOP)
    dual = OR if op == AND else AND
    flat = []
    for part in parts:
        flat.extend(_flatten(op, part))
    if zero in flat:
        return zero
    uniq = sorted({f for f in flat if f is not unit}, key=lambda f: f.text)
    # Absorption: x op (x dual y) collapses to x, for x itself a dual-combination too.
    pieces = {f: frozenset(_flatten(dual, f)) for f in uniq}
    kept = [f for f in uniq if not any(g is not f and pieces[g] < pieces[f] for g in uniq)]
    return _fold(op, kept, unit)


def _fold(op: str, parts: list[Formula], unit: Formula) -> Formula:
    if not parts:
        return unit
    out = parts[0]
    for part in parts[1:]:
        out = Bin(op, out, part)
    return out


def _product(parts: list[Formula], unit: Formula = ONE) -> Formula:
    flat = []
    for part in parts:
        flat.extend(_flatten(TIMES, part))
    if BOT in flat:
        return BOT
    flat = sorted((f for f in flat if f is not unit), key=lambda f: f.text)
    if flat and all(f is TOP for f in flat):
        return TOP
    return _fold(TIMES, flat, unit)


def _sum(parts: list[Formula], unit: Formula = ZERO) -> Formula:
    flat = []
    for part in parts:
        flat.extend(_flatten(PLUS, part))
    if TOP in flat:
        return TOP
    flat = sorted((f for f in flat if f is not unit), key=lambda f: f.text)
    return _fold(PLUS, flat, unit)


def constant_identities(calc: Optional[Calculus]) -> dict:
    """Constants the calculus proves interchangeable: 0 with bot, 1 with top.

    Each identity is decided by proof search on a ground sequent in both
    directions, so it is exact for that calculus.
    """
    if calc is None:
        return {}
    known = calc.facts.get("constant_identities")
    if known is None:
        prover = Prover(calc, budget=10_000, force=True)
        known = {}
        for const, target in ((ZERO, BOT), (ONE, TOP)):
            pair = (Sequent([const], [target]), Sequent([target], [const]))
            if all(t.is_valid(calc.mode) and prover.derivable(t) for t in pair):
                known[const] = target
        calc.facts["constant_identities"] = known
    return known


def is_involutive(calc: Optional[Calculus]) -> bool:
    """Whether the calculus proves ~~p => p; rules are schematic, so this covers every formula."""
    if calc is None:
        return False
    known = calc.facts.get("involutive")
    if known is None:
        p = Atom("p")
        known = Prover(calc, budget=10_000, force=True).derivable(Sequent([neg(neg(p))], [p]))
        calc.facts["involutive"] = known
    return known


def simplify(calc: Optional[Calculus], f: Formula) -> Formula:
    """Apply equivalence-preserving rewrites.

    The fixed rewrites are valid in FLe (CFLe for ``+``): flattening, sorting
    and deduplication of /\\ and \\/, lattice absorption, flattening and
    sorting of * and +, unit laws for * /\\ \\/ +, absorbing elements (bot for
    /\\ and *, top for \\/ and +), 1 -> x to x, x -> top to top, bot -> x to
    top, top -> bot to bot, and top * top to top.  With a calculus, constants
    it proves equal (see ``constant_identities``) are merged first, and
    double negations are removed when the calculus is involutive.
    """
    identities = constant_identities(calc)
    one = identities.get(ONE, ONE)
    zero = identities.get(ZERO, ZERO)
    involutive = is_involutive(calc)
    memo: dict = {}

    def go(g: Formula) -> Formula:
        hit = memo.get(g)
        if hit is not None:
            return hit
        if isinstance(g, Bin):
            left, right = go(g.left), go(g.right)
            if g.op in (AND, OR):
                out = _lattice(g.op, [left, right])
            elif g.op == TIMES:
                out = _product([left, right], one)
            elif g.op == PLUS:
                out = _sum([left, right], zero)
            elif involutive and right is zero and isinstance(left, Bin) and left.op == IMP and left.right is zero:
                out = left.left
            elif left is one:
                out = right
            elif right is TOP or left is BOT:
                out = TOP
            elif left is TOP and right is BOT:
                out = BOT
            else:
                out = Bin(IMP, left, right)
        elif isinstance(g, Box):
            out = Box(go(g.inner))
        else:
            out = identities.get(g, g)
        memo[g] = out
        return out

    return go(f)


# ------------------------------------------------------------- interpolator

@dataclass
class InterpolantResult:
    sequent: Sequent
    atom: str
    kind: str
    mode: str
    formula: Formula
    raw_size: int
    simplified_size: int
    witness: Optional[ProofTree] = None
    stats: dict = field(default_factory=dict)

    def witness_root(self) -> Sequent:
        if self.kind == FORALL:
            return compose(self.sequent, Sequent([self.formula], []))
        return compose(self.sequent, Sequent([], [self.formula]))

    def to_json(self) -> dict:
        return {
            "sequent": self.sequent.text,
            "atom": self.atom,
            "kind": self.kind,
            "mode": self.mode,
            "formula": self.formula.text,
            "raw_size": self.raw_size,
            "simplified_size": self.simplified_size,
            "witness_proof": self.witness.to_json() if self.witness is not None else None,
            "stats": self.stats,
        }


def check_mode(calc: Calculus, mode: str) -> None:
    if mode not in MODES:
        raise ModeError(f"unknown interpolation mode {mode!r}")
    if mode == STRONG:
        if calc.mode != "multi":
            raise ModeError("strong interpolation needs a multi-conclusion calculus")
        return
    if calc.mode != "single":
        raise ModeError(f"{mode} interpolation needs a single-conclusion calculus")
    sharing = [r.name for r in calc.rules if calc.classes[r.name].kind == CONTEXT_SHARING]
    if mode == PLAIN and sharing:
        raise ModeError(f"plain interpolation does not cover context-sharing rules ({', '.join(sharing)}); use weak")
    if mode == WEAK and not (calc.flag("weakening_admissible") and calc.flag("ctx_sharing_impl_admissible")):
        raise ModeError("weak interpolation needs the weakening and ctx-sharing-impl flags")


def default_mode(calc: Calculus) -> str:
    if calc.mode == "multi":
        return STRONG
    if any(calc.classes[r.name].kind == CONTEXT_SHARING for r in calc.rules):
        return WEAK
    return PLAIN


class Interpolator:
    """Computes left (forall) and right (exists) p-interpolants for one calculus, atom and mode.

    Results are memoised per sequent; ``cache`` may be shared between
    interpolators with identical (calculus, atom, mode).
    """

    def __init__(self, calc: Calculus, p: Union[str, Atom], mode: Optional[str] = None,
                 max_parts: Optional[int] = None, size_ceiling: int = DEFAULT_SIZE_CEILING,
                 cache: Optional[dict] = None, simplify_results: bool = True):
        self.calc = calc
        self.atom = p if isinstance(p, Atom) else Atom(p)
        self.mode = mode or default_mode(calc)
        check_mode(calc, self.mode)
        _check_focused(calc)
        self.max_parts = calc.max_blocks() if max_parts is None else max_parts
        self.size_ceiling = size_ceiling
        self.cache = {} if cache is None else cache
        self.simplify_results = simplify_results
        self.hits = 0
        self.depth = 0
        self.max_depth = 0
        self._raw: dict = {}

    # public entry points --------------------------------------------------

    def exists(self, v: Union[str, Sequent]) -> Formula:
        v = as_sequent(v)
        v.validate(self.calc.mode)
        if self.mode != STRONG and v.suc:
            raise ModeError("the right interpolant needs a sequent with empty succedent")
        return self._get(EXISTS, v, None)

    def forall(self, u: Union[str, Sequent]) -> Formula:
        u = as_sequent(u)
        u.validate(self.calc.mode)
        return self._get(FORALL, u, None)

    def raw_size(self, kind: str, s: Sequent) -> int:
        return self._raw.get((kind, s), 0)

    # recursion -------------------------------------------------------------

    def _get(self, kind: str, s: Sequent, parent: Optional[tuple]) -> Formula:
        if parent is not None:
            self._check_descent(kind, s, parent)
        key = (kind, s)
        hit = self.cache.get(key)
        if hit is not None:
            self.hits += 1
            return hit
        self.depth += 1
        self.max_depth = max(self.max_depth, self.depth)
        try:
            raw = self._build(kind, s)
        finally:
            self.depth -= 1
        out = simplify(self.calc, raw) if self.simplify_results else raw
        if out.size > self.size_ceiling:
            raise InterpolantTooLarge(out.size, self.size_ceiling, s.text)
        self._raw[key] = raw.size
        self.cache[key] = out
        return out

    def _check_descent(self, kind: str, s: Sequent, parent: tuple) -> None:
        pkind, ps = parent
        if s == ps and pkind == FORALL and kind == EXISTS:
            return
        if measure(self.calc, s) >= measure(self.calc, ps):
            raise RecursionInvariantViolation(
                f"{kind} interpolant of {s.text} requested while computing {pkind} of {ps.text}")

    def _build(self, kind: str, s: Sequent) -> Formula:
        if self.mode == STRONG:
            if kind == EXISTS:
                return neg(self._get(FORALL, s, None))
            return self._strong_forall(s)
        if s.is_empty():
            return ONE if kind == EXISTS else ZERO
        return self._exists(s) if kind == EXISTS else self._forall(s)

    # helpers -----------------------------------------------------------------

    # ``at`` is the (kind, sequent) being defined; it drives the descent check.
    def _ex(self, s: Sequent, at: tuple) -> Formula:
        return self._get(EXISTS, s, at)

    def _fa(self, s: Sequent, at: tuple) -> Formula:
        return self._get(FORALL, s, at)

    def _guarded(self, s: Sequent, at: tuple) -> Formula:
        """The left interpolant, guarded by the right interpolant of the antecedent in weak mode."""
        if self.mode != WEAK:
            return self._fa(s, at)
        return imp(self._ex(tilde(s), at), self._fa(s, at))

    def _blocks(self, inst):
        rc = self.calc.classes[inst.name]
        blocks = [{"S": [], "T": []} for _ in rc.blocks]
        for prem, b, t in zip(inst.premises, rc.premise_blocks, rc.premise_types):
            blocks[b][t].append(prem)
        return rc, blocks

    def _modal_parts(self, s: Sequent) -> Optional[Sequent]:
        """(G =>) when ``s`` is ([]G =>) with G non-empty."""
        if s.suc or not s.ant or not all(isinstance(f, Box) for f in s.ant.distinct()):
            return None
        return Sequent(s.ant.map(lambda f: f.inner), EMPTY)

    def _part_counts(self) -> range:
        return range(2, self.max_parts + 1)

    # single-conclusion recursions ---------------------------------------------

    def _exists(self, v: Sequent) -> Formula:
        at = (EXISTS, v)
        conjuncts = []
        for n in self._part_counts():
            for parts in _canonical_parts(v, n, "exists"):
                conjuncts.append(big_times([self._ex(part, at) for part in parts]))
        for inst in match_backward(self.calc, v):
            rc, blocks = self._blocks(inst)
            if rc.kind not in (LEFT, CONTEXT_SHARING):
                continue
            s_blocks = [i for i, b in enumerate(blocks) if b["S"]]
            for d in s_blocks or [None]:
                conclusion = big_or([self._ex(x, at) for x in blocks[d]["S"]]) if d is not None else ZERO
                factors = []
                for i, b in enumerate(blocks):
                    if rc.kind == CONTEXT_SHARING:
                        if i == d:
                            members = b["T"]
                        else:
                            members = b["S"] + b["T"]
                    else:
                        members = b["T"] if not b["S"] else ([] if i == d else b["S"])
                    if members:
                        factors.append(big_and([self._guarded(x, at) for x in members]))
                conjuncts.append(imp(big_times(factors), conclusion))
        inner = self._modal_parts(v)
        if inner is not None and self.calc.has_modal_K:
            conjuncts.append(Box(self._ex(inner, at)))
        conjuncts.append(axiom_exists(self.calc, v, self.atom))
        return big_and(conjuncts)

    def _forall(self, u: Sequent) -> Formula:
        at = (FORALL, u)
        disjuncts = []
        for n in self._part_counts():
            for parts in _canonical_parts(u, n, "forall"):
                first, rest = parts[0], parts[1:]
                guard = big_times([self._ex(part, at) for part in rest])
                disjuncts.append(imp(guard, self._fa(first, at) if not first.is_empty() else ZERO))
        for inst in match_backward(self.calc, u):
            rc, blocks = self._blocks(inst)
            if rc.kind in (LEFT, RIGHT, CONTEXT_SHARING):
                factors = []
                for b in blocks:
                    members = b["S"] + b["T"]
                    if members:
                        factors.append(big_and([self._guarded(x, at) for x in members]))
                disjuncts.append(big_times(factors))
            elif rc.kind in (MODAL_K, MODAL_D):
                (prem,) = inst.premises
                disjuncts.append(Box(self._guarded(prem, at)))
        disjuncts.append(axiom_forall(self.calc, u, self.atom))
        return big_or(disjuncts)

    # multi-conclusion recursion -------------------------------------------------

    def _strong_forall(self, s: Sequent) -> Formula:
        if s.is_empty():
            return ZERO
        at = (FORALL, s)
        disjuncts = []
        for inst in match_backward(self.calc, s):
            rc, blocks = self._blocks(inst)
            if rc.kind in (LEFT_MULTI, RIGHT_MULTI):
                disjuncts.append(big_times([big_and([self._fa(x, at) for x in b["S"] + b["T"]])
                                            for b in blocks if b["S"] or b["T"]]))
            elif rc.kind in (MODAL_K, MODAL_D):
                (prem,) = inst.premises
                disjuncts.append(Box(self._fa(prem, at)))
        for n in self._part_counts():
            for parts in _canonical_parts(s, n, "nontrivial"):
                disjuncts.append(big_plus([self._fa(part, at) for part in parts]))
        inner = self._modal_parts(s)
        if inner is not None and self.calc.has_modal_K:
            disjuncts.append(neg(Box(neg(self._fa(inner, at)))))
        disjuncts.append(axiom_forall_strong(self.calc, s, self.atom))
        return big_or(disjuncts)


# ------------------------------------------------------------ public wrappers

def _result(interp: Interpolator, kind: str, s: Sequent, formula: Formula, witness: bool,
            budget: int, started: float) -> InterpolantResult:
    res = InterpolantResult(
        sequent=s,
        atom=interp.atom.name,
        kind=kind,
        mode=interp.mode,
        formula=formula,
        raw_size=interp.raw_size(kind, s) or formula.size,
        simplified_size=formula.size,
    )
    if witness:
        res.witness = Prover(interp.calc, budget).tree(res.witness_root())
    res.stats = {
        "recursion_depth": interp.max_depth,
        "cache_hits": interp.hits,
        "cache_size": len(interp.cache),
        "raw_size": res.raw_size,
        "simplified_size": res.simplified_size,
        "seconds": round(time.perf_counter() - started, 4),
    }
    return res


def exists_p(calc: Calculus, v: Union[str, Sequent], p: Union[str, Atom], mode: Optional[str] = None,
             cache: Optional[dict] = None, witness: bool = True, budget: int = 2_000_000,
             **options) -> InterpolantResult:
    """Right p-interpolant of ``v`` with an optional witness proof of condition (iii)."""
    started = time.perf_counter()
    interp = Interpolator(calc, p, mode, cache=cache, **options)
    v = as_sequent(v)
    return _result(interp, EXISTS, v, interp.exists(v), witness, budget, started)


def forall_p(calc: Calculus, u: Union[str, Sequent], p: Union[str, Atom], mode: Optional[str] = None,
             cache: Optional[dict] = None, witness: bool = True, budget: int = 2_000_000,
             **options) -> InterpolantResult:
    """Left p-interpolant of ``u`` with an optional witness proof of condition (i)."""
    started = time.perf_counter()
    interp = Interpolator(calc, p, mode, cache=cache, **options)
    u = as_sequent(u)
    return _result(interp, FORALL, u, interp.forall(u), witness, budget, started)


def logic_uip(calc: Calculus, phi: Union[str, Formula], p: Union[str, Atom], mode: Optional[str] = None,
              **options) -> dict:
    """Pre- and post-interpolants of a formula: the left interpolant of (=> phi) and the right one of (phi =>)."""
    phi = as_formula(phi)
    interp = Interpolator(calc, p, mode, **options)
    return {
        "pre": interp.forall(Sequent([], [phi])),
        "post": interp.exists(Sequent([phi], [])),
    }


__all__ = [
    "PLAIN", "WEAK", "STRONG", "Interpolator", "InterpolantResult", "partitions", "axiom_exists",
    "axiom_forall", "axiom_exists_strong", "exists_p", "forall_p", "logic_uip", "simplify",
    "check_mode", "default_mode",
]
