"""Backward rule matching, termination measures and proof search."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Optional, Union

from .errors import BudgetExceeded, CalculusError
from .schema import (
    Calculus,
    MetaVar,
    RuleSchema,
    instantiate,
    instantiate_formula,
    match_conclusion,
    match_forms,
)
from .syntax import (
    AND,
    IMP,
    PLUS,
    Atom,
    Bin,
    Box,
    Const,
    FMultiset,
    Formula,
    Sequent,
    as_sequent,
)

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class RuleInstance:
    rule: RuleSchema
    premises: tuple[Sequent, ...]
    conclusion: Sequent
    bindings: dict = field(hash=False, compare=False)

    @property
    def name(self) -> str:
        return self.rule.name


def match_backward(calc: Calculus, s: Sequent) -> list[RuleInstance]:
    """Every rule instance whose conclusion is ``s``, in rule order.

    Instances with a premise equal to the conclusion (possible for a D rule
    with an empty context) are dropped since they can never help a proof.
    """
    cached = calc.instance_cache.get(s)
    if cached is not None:
        return cached
    out = []
    for rule in _candidate_rules(calc, s):
        out.extend(_rule_instances(calc, rule, s))
    calc.instance_cache[s] = out
    return out


def _rule_instances(calc: Calculus, rule: RuleSchema, s: Sequent) -> list[RuleInstance]:
    out = []
    seen = set()
    for binding in match_conclusion(rule.conclusion, s):
        try:
            premises = tuple(instantiate(p, binding) for p in rule.premises)
        except KeyError:
            continue
        if premises in seen:
            continue
        seen.add(premises)
        if any(p == s or not p.is_valid(calc.mode) for p in premises):
            continue
        out.append(RuleInstance(rule, premises, s, binding))
    return out


def _head(f: Formula):
    if isinstance(f, Bin):
        return f.op
    if isinstance(f, Box):
        return "[]"
    return None if isinstance(f, MetaVar) else f


def _candidate_rules(calc: Calculus, s: Sequent) -> list[RuleSchema]:
    """Rules whose explicit conclusion formulas have heads present in ``s``."""
    keyed = calc.facts.get("rule_heads")
    if keyed is None:
        keyed = []
        for rule in calc.rules:
            heads = {("ant", _head(f)) for f in rule.conclusion.ant_forms}
            heads |= {("suc", _head(f)) for f in rule.conclusion.suc_forms}
            heads.discard(("ant", None))
            heads.discard(("suc", None))
            keyed.append((rule, heads))
        calc.facts["rule_heads"] = keyed
    present = {("ant", _head(f)) for f in s.ant.distinct()} | {("suc", _head(f)) for f in s.suc.distinct()}
    return [rule for rule, heads in keyed if heads <= present]


def matching_axiom(calc: Calculus, s: Sequent) -> Optional[tuple[RuleSchema, dict]]:
    for ax in calc.axioms:
        binding = next(match_conclusion(ax.conclusion, s), None)
        if binding is not None:
            return ax, binding
    return None


# ------------------------------------------------------------------ measure

def formula_weight(calc: Calculus, f: Formula) -> int:
    weights = calc.facts.setdefault("weights", {})
    w = weights.get(f)
    if w is None:
        order = calc.order
        if isinstance(f, Atom):
            w = order.weight_of("atom")
        elif isinstance(f, Const):
            w = order.weight_of("const")
        elif isinstance(f, Box):
            w = order.weight_of("[]") + formula_weight(calc, f.inner)
        else:
            w = order.weight_of(f.op) + formula_weight(calc, f.left) + formula_weight(calc, f.right)
        weights[f] = w
    return w


def _occurrence_measure(calc: Calculus, f: Formula) -> int:
    w = formula_weight(calc, f)
    return w if calc.order.kind == "additive" else calc.order.base ** w


def _multiset_measure(calc: Calculus, ms: FMultiset) -> int:
    return sum(n * _occurrence_measure(calc, f) for f, n in ms.items)


def measure(calc: Calculus, s: Sequent) -> int:
    """Sum over formula occurrences of the weight (additive) or base**weight (exponential)."""
    return _multiset_measure(calc, s.ant) + _multiset_measure(calc, s.suc)


# ------------------------------------------------------------- proof trees

def _binding_json(bindings: dict) -> dict:
    out = {}
    for key in sorted(bindings):
        value = bindings[key]
        out[key] = [f.text for f in value] if isinstance(value, FMultiset) else value.text
    return out


@dataclass
class ProofTree:
    root: Sequent
    rule: str
    bindings: dict
    children: list["ProofTree"]
    schema: RuleSchema
    is_axiom: bool = False

    def to_json(self) -> dict:
        return {
            "root": self.root.text,
            "rule": self.rule,
            "bindings": _binding_json(self.bindings),
            "children": [c.to_json() for c in self.children],
        }

    def to_text(self, indent: int = 0) -> str:
        pad = "  " * indent
        lines = [f"{pad}{self.root.text}    [{self.rule}]"]
        lines += [c.to_text(indent + 1) for c in self.children]
        return "\n".join(lines)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=0)


def replay(tree: ProofTree) -> bool:
    """Re-instantiate every node's schema from its bindings and compare."""
    stack = [tree]
    while stack:
        node = stack.pop()
        if instantiate(node.schema.conclusion, node.bindings) != node.root:
            return False
        premises = [instantiate(p, node.bindings) for p in node.schema.premises]
        if premises != [c.root for c in node.children]:
            return False
        stack.extend(node.children)
    return True


# ------------------------------------------------------------- proof search

_AXIOM = "axiom"


class Prover:
    """Memoised exhaustive backward search.

    ``cache`` maps a sequent to its last successful step (an axiom match or a
    RuleInstance) or to False; it may be shared between Prover objects over
    the same calculus.
    """

    def __init__(self, calc: Calculus, budget: int = DEFAULT_BUDGET, cache: Optional[dict] = None,
                 force: bool = False):
        if not calc.order_checked and not force:
            raise CalculusError(f"calculus {calc.name} has no validated order; pass force to search anyway")
        self.calc = calc
        self.budget = budget
        self.cache = {} if cache is None else cache
        self.nodes = 0
        self.hits = 0
        self._active: set = set()

    def derivable(self, s: Union[str, Sequent]) -> bool:
        s = as_sequent(s)
        s.validate(self.calc.mode)
        limit = sys.getrecursionlimit()
        if limit < 20000:
            sys.setrecursionlimit(20000)
        try:
            return self._search(s)
        finally:
            sys.setrecursionlimit(limit)

    def _search(self, s: Sequent) -> bool:
        step = self.cache.get(s)
        if step is not None:
            self.hits += 1
            return step is not False
        if s in self._active:
            return False
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)
        found = matching_axiom(self.calc, s)
        if found is not None:
            self.cache[s] = (_AXIOM, *found)
            return True
        self._active.add(s)
        try:
            if self.calc.flag("invertible_rules"):
                instances = _committed(self.calc, s)
            else:
                instances = match_backward(self.calc, s)
            for inst in instances:
                if all(self._search(p) for p in inst.premises):
                    self.cache[s] = inst
                    return True
        finally:
            self._active.discard(s)
        self.cache[s] = False
        return False

    def tree(self, s: Union[str, Sequent]) -> Optional[ProofTree]:
        s = as_sequent(s)
        if not self.derivable(s):
            return None
        return self._build(s)

    def _build(self, s: Sequent) -> ProofTree:
        step = self.cache[s]
        if isinstance(step, tuple):
            _, axiom, binding = step
            return ProofTree(s, axiom.name, binding, [], axiom, is_axiom=True)
        return ProofTree(s, step.name, step.bindings, [self._build(p) for p in step.premises], step.rule)


def _is_weakening(premises: tuple[Sequent, ...], s: Sequent) -> bool:
    return all(p.ant <= s.ant and p.suc <= s.suc for p in premises)


def _weakens(rule: RuleSchema) -> bool:
    """Premises are bare contexts of the conclusion, so every instance is a weakening."""
    concl = rule.conclusion.context_names()
    return all(not p.forms() and p.context_names() <= concl for p in rule.premises)


def _committed(calc: Calculus, s: Sequent) -> list[RuleInstance]:
    """With invertible logical rules the first logical instance decides the sequent.

    When only weakening-like instances apply, ``s`` is derivable exactly when
    an axiom matches some weakened sub-sequent; that sub-sequent is located
    directly and only an instance leading towards it is returned.
    """
    structural = calc.facts.get("weakening_rules")
    if structural is None:
        structural = calc.facts["weakening_rules"] = {r.name for r in calc.rules if _weakens(r)}
    for rule in _candidate_rules(calc, s):
        if rule.name in structural:
            continue
        for binding in match_conclusion(rule.conclusion, s):
            try:
                premises = tuple(instantiate(p, binding) for p in rule.premises)
            except KeyError:
                continue
            if _is_weakening(premises, s) or not all(p.is_valid(calc.mode) for p in premises):
                continue
            return [RuleInstance(rule, premises, s, binding)]
    instances = match_backward(calc, s)
    target = _weakening_target(calc, s, instances)
    if target is None:
        return []
    return [inst for inst in instances if all(target.ant <= p.ant and target.suc <= p.suc for p in inst.premises)][:1]


def _weakening_target(calc: Calculus, s: Sequent, instances: list[RuleInstance]) -> Optional[Sequent]:
    removable_ant, removable_suc = set(), set()
    for inst in instances:
        for p in inst.premises:
            removable_ant.update((s.ant - p.ant).distinct())
            removable_suc.update((s.suc - p.suc).distinct())
    fixed = Sequent(s.ant.filter(lambda f: f not in removable_ant), s.suc.filter(lambda f: f not in removable_suc))
    optional = sorted([(f, "ant") for f in s.ant if f in removable_ant] + [(f, "suc") for f in s.suc if f in removable_suc],
                      key=lambda item: (item[0].text, item[1]))
    width = max((len(ax.conclusion.forms()) for ax in calc.axioms), default=0)
    seen = set()
    for k in range(width + 1):
        for extra in combinations(optional, k):
            if extra in seen:
                continue
            seen.add(extra)
            t = Sequent(fixed.ant + FMultiset(f for f, side in extra if side == "ant"),
                        fixed.suc + FMultiset(f for f, side in extra if side == "suc"))
            if t.is_valid(calc.mode) and matching_axiom(calc, t) is not None:
                return t
    return None


def prove(calc: Calculus, s: Union[str, Sequent], budget: int = DEFAULT_BUDGET,
          cache: Optional[dict] = None, force: bool = False) -> Optional[ProofTree]:
    """A proof tree for ``s`` or None when it is not derivable."""
    return Prover(calc, budget, cache, force).tree(s)


def derivable(calc: Calculus, s: Union[str, Sequent], budget: int = DEFAULT_BUDGET,
              cache: Optional[dict] = None, force: bool = False) -> bool:
    return Prover(calc, budget, cache, force).derivable(s)


# -------------------------------------------------------- order validation

def _bound_applies(rule: RuleSchema) -> bool:
    ctxs = [c for ms in (*rule.premises, rule.conclusion) for c in ms.ant_ctx + ms.suc_ctx]
    return not any(c.boxed for c in ctxs)


def _premises_bounded(calc: Calculus, rule: RuleSchema, s: Sequent, m: int) -> bool:
    """True if every instance of ``rule`` at ``s`` certainly has smaller premises.

    Each premise is bounded by its instantiated formulas plus, for every
    context occurrence, the whole residual of the side that variable fills in
    the conclusion.  Measures are additive over occurrences, so this bounds
    every way of splitting the residual.
    """
    concl = rule.conclusion
    side_of = {c.name: "ant" for c in concl.ant_ctx} | {c.name: "suc" for c in concl.suc_ctx}
    for b1, ant_rest in match_forms(concl.ant_forms, s.ant, {}):
        if ant_rest and not concl.ant_ctx:
            continue
        for binding, suc_rest in match_forms(concl.suc_forms, s.suc, b1):
            if suc_rest and not concl.suc_ctx:
                continue
            rest = {"ant": _multiset_measure(calc, ant_rest), "suc": _multiset_measure(calc, suc_rest)}
            for prem in rule.premises:
                try:
                    active = [instantiate_formula(f, binding) for f in prem.ant_forms + prem.suc_forms]
                except KeyError:
                    return False
                bound = sum(_occurrence_measure(calc, f) for f in active)
                for c in prem.ant_ctx + prem.suc_ctx:
                    if c.name not in side_of:
                        return False
                    bound += rest[side_of[c.name]]
                if bound >= m:
                    return False
    return True


def validate_order(calc: Calculus, pool: Iterable[Sequent], subsequents: bool = True,
                   rules: Optional[Iterable[RuleSchema]] = None, unboxing: bool = True) -> list[dict]:
    """Check the three termination clauses over ``pool``; return the violations.

    ``rules`` restricts the premise clause to some of the calculus's rules.
    Rule instances are enumerated only when the residual bound of
    ``_premises_bounded`` fails, so the verdict is the same as checking
    every instance.
    """
    bounded = {rule.name: _bound_applies(rule) for rule in calc.rules}
    wanted = None if rules is None else {rule.name for rule in rules}
    violations = []
    for s in pool:
        m = measure(calc, s)
        for rule in _candidate_rules(calc, s):
            if wanted is not None and rule.name not in wanted:
                continue
            if bounded[rule.name] and _premises_bounded(calc, rule, s, m):
                continue
            for inst in _rule_instances(calc, rule, s):
                for prem in inst.premises:
                    if measure(calc, prem) >= m:
                        violations.append({"clause": "premise", "rule": inst.name, "sequent": s.text,
                                           "detail": f"premise {prem.text} does not decrease"})
        if subsequents:
            # a proper subsequent drops some occurrences; it is smaller iff each dropped one weighs > 0
            for f in s.ant.distinct() + s.suc.distinct():
                if _occurrence_measure(calc, f) <= 0:
                    violations.append({"clause": "subsequent", "sequent": s.text,
                                       "detail": f"dropping {f.text} does not decrease"})
        if unboxing:
            # likewise an unboxing is smaller iff each unboxed occurrence loses weight
            for f in s.ant.distinct() + s.suc.distinct():
                if isinstance(f, Box) and _occurrence_measure(calc, f.inner) >= _occurrence_measure(calc, f):
                    violations.append({"clause": "unboxing", "sequent": s.text,
                                       "detail": f"unboxing {f.text} does not decrease"})
    return violations


_GRID_ATOMS = (Atom("p"), Atom("q"))
_GRID_FORMULAS = _GRID_ATOMS + (Bin(IMP, Atom("p"), Atom("q")), Bin(AND, Atom("q"), Atom("p")))


def schematic_order_violations(calc: Calculus) -> list[dict]:
    """Instantiate every rule on a small grid and compare premise and conclusion measures."""
    violations = []
    for rule in calc.rules:
        metas = sorted({m for ms in (*rule.premises, rule.conclusion) for m in ms.meta_vars()},
                       key=lambda m: m.name)
        ctxs = sorted({c.name for ms in (*rule.premises, rule.conclusion) for c in ms.ant_ctx + ms.suc_ctx})
        choices = [_GRID_ATOMS if m.atomic else _GRID_FORMULAS for m in metas]
        ctx_choices = [(FMultiset(), FMultiset([Atom("r")]))] * len(ctxs)
        for values in product(*choices):
            binding = {m.name: v for m, v in zip(metas, values)}
            for ctx_values in product(*ctx_choices):
                full = dict(binding)
                full.update({"$" + n: v for n, v in zip(ctxs, ctx_values)})
                concl = instantiate(rule.conclusion, full)
                premises = [instantiate(p, full) for p in rule.premises]
                if not concl.is_valid(calc.mode) or any(p == concl for p in premises):
                    continue
                m = measure(calc, concl)
                for prem in premises:
                    if prem.is_valid(calc.mode) and measure(calc, prem) >= m:
                        violations.append({"clause": "premise", "rule": rule.name, "sequent": concl.text,
                                           "detail": f"premise {prem.text} of {concl.text} does not decrease"})
    return violations


def connectives_of(calc: Calculus) -> set[str]:
    """Connectives and modalities mentioned by the calculus's schemas."""
    found: set[str] = set()

    def walk(f: Formula):
        if isinstance(f, Bin):
            found.add(f.op)
            walk(f.left)
            walk(f.right)
        elif isinstance(f, Box):
            found.add("[]")
            walk(f.inner)

    for schema in (*calc.axioms, *calc.rules):
        for ms in (*schema.premises, schema.conclusion):
            for f in ms.forms():
                walk(f)
            if any(c.boxed for c in ms.ant_ctx + ms.suc_ctx):
                found.add("[]")
    if calc.mode != "multi":
        found.discard(PLUS)
    return found


__all__ = [
    "RuleInstance", "ProofTree", "Prover", "match_backward", "measure", "prove", "derivable",
    "validate_order", "replay", "schematic_order_violations", "matching_axiom", "connectives_of",
]
