"""Rule schemas, the calculus DSL, and semi-analytic classification.

A calculus file is line oriented::

    calculus FLew single weakening          # name, mode, optional flags
    order additive                          # or: order exponential base 2 weights /\\=2 *=2
    axiom id: a => a
    rule L->: $G => a ; $S, b => $D --- $G, $S, a -> b => $D
    rule Lp->: $G => p ; $G, b => $D --- $G, p -> b => $D where p atomic

Context variables are ``$``-prefixed (``[]$G`` is a boxed context), bare
lowercase identifiers are meta-formula variables and quoted names are object
atoms.  ``where x atomic`` restricts meta-variables to atoms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .errors import CalculusError, ClassificationError, ModeError, ParseError
from .syntax import (
    UNARY_PREC,
    Atom,
    Bin,
    Box,
    Const,
    FMultiset,
    Formula,
    FormulaParser,
    Sequent,
    Token,
    _intern,
    render,
    tokenize,
)

# Classification outcomes.
LEFT = "LeftSemiAnalytic"
RIGHT = "RightSemiAnalytic"
CONTEXT_SHARING = "ContextSharingSemiAnalytic"
LEFT_MULTI = "LeftMultiSemiAnalytic"
RIGHT_MULTI = "RightMultiSemiAnalytic"
MODAL_K = "ModalK"
MODAL_D = "ModalD"
FOCUSED_AXIOM = "FocusedAxiom"
NOT_SEMI_ANALYTIC = "NotSemiAnalytic"

# Reasons attached to NotSemiAnalytic.
OCCURRENCE = "OccurrenceViolation"
CONTEXT_SHAPE = "ContextShape"
CONTEXT_SIDE_CONDITION = "ContextSideCondition"
SUCCEDENT_SHAPE = "SuccedentShape"
PRINCIPAL_SHAPE = "PrincipalShape"
AXIOM_SHAPE = "AxiomShape"
AXIOM_VARIABLES = "AxiomVariables"

ACCEPTED = {
    "single": {LEFT, RIGHT, CONTEXT_SHARING, MODAL_K, MODAL_D},
    "multi": {LEFT_MULTI, RIGHT_MULTI, MODAL_K, MODAL_D},
}
MODES = ("single", "multi")
FLAG_NAMES = {
    "weakening": "weakening_admissible",
    "ctx-sharing-impl": "ctx_sharing_impl_admissible",
    "modal-K": "has_modal_K",
    "modal-D": "has_modal_D",
    "invertible": "invertible_rules",
}


class MetaVar(Formula):
    """Meta-formula variable; ``atomic`` ones only match atoms."""

    __slots__ = ("name", "atomic")

    def __new__(cls, name: str, atomic: bool = False):
        def build(obj):
            object.__setattr__(obj, "name", name)
            object.__setattr__(obj, "atomic", atomic)
            obj._init(name, 1, UNARY_PREC)

        return _intern(cls, ("meta", name, atomic), build)

    def __reduce__(self):
        return (MetaVar, (self.name, self.atomic))


@dataclass(frozen=True)
class CtxVar:
    name: str
    boxed: bool = False

    def __str__(self) -> str:
        return ("[]" if self.boxed else "") + "$" + self.name


@dataclass(frozen=True)
class MetaSequent:
    ant_ctx: tuple[CtxVar, ...] = ()
    ant_forms: tuple[Formula, ...] = ()
    suc_ctx: tuple[CtxVar, ...] = ()
    suc_forms: tuple[Formula, ...] = ()

    def __str__(self) -> str:
        left = [str(c) for c in self.ant_ctx] + [render(f, True) for f in self.ant_forms]
        right = [str(c) for c in self.suc_ctx] + [render(f, True) for f in self.suc_forms]
        return " ".join(part for part in (", ".join(left), "=>", ", ".join(right)) if part)

    def context_names(self) -> set[str]:
        return {c.name for c in self.ant_ctx + self.suc_ctx}

    def forms(self) -> tuple[Formula, ...]:
        return self.ant_forms + self.suc_forms

    def meta_vars(self) -> set[MetaVar]:
        return {leaf for f in self.forms() for leaf in f.leaves if isinstance(leaf, MetaVar)}


@dataclass(frozen=True)
class RuleClass:
    """Classification of a rule or axiom schema.

    For semi-analytic rules ``blocks`` lists the antecedent context variable of
    each premise block, ``premise_blocks`` maps premises to blocks and
    ``premise_types`` records whether a premise has a context succedent ("S")
    or a formula succedent ("T").
    """

    kind: str
    reasons: tuple[str, ...] = ()
    axiom_kind: Optional[int] = None
    blocks: tuple[str, ...] = ()
    premise_blocks: tuple[int, ...] = ()
    premise_types: tuple[str, ...] = ()

    def __str__(self) -> str:
        if self.kind == FOCUSED_AXIOM:
            return f"{FOCUSED_AXIOM}({self.axiom_kind})"
        if self.kind == NOT_SEMI_ANALYTIC:
            return f"{NOT_SEMI_ANALYTIC}({', '.join(self.reasons)})"
        return self.kind

    @property
    def ok(self) -> bool:
        return self.kind != NOT_SEMI_ANALYTIC

    def to_json(self) -> dict:
        data = {"class": self.kind}
        if self.axiom_kind is not None:
            data["axiom_kind"] = self.axiom_kind
        if self.reasons:
            data["reasons"] = list(self.reasons)
        return data


@dataclass(frozen=True)
class RuleSchema:
    name: str
    premises: tuple[MetaSequent, ...]
    conclusion: MetaSequent

    def __str__(self) -> str:
        if not self.premises:
            return f"{self.name}: {self.conclusion}"
        return f"{self.name}: {' ; '.join(map(str, self.premises))} --- {self.conclusion}"

    @property
    def is_axiom(self) -> bool:
        return not self.premises


@dataclass(frozen=True)
class OrderSpec:
    """Weight-based termination order.

    A formula's weight is the sum of its leaf weights plus the weight of each
    connective node.  The sequent measure is the sum over all formula
    occurrences of the weight (``additive``) or of ``base ** weight``
    (``exponential``, which is compatible with the multiset extension).
    """

    kind: str = "additive"
    base: int = 2
    weights: tuple[tuple[str, int], ...] = ()

    def weight_of(self, op: str) -> int:
        return dict(self.weights).get(op, 1)

    def describe(self) -> str:
        text = "additive" if self.kind == "additive" else f"exponential base {self.base}"
        if self.weights:
            text += " weights " + " ".join(f"{k}={v}" for k, v in self.weights)
        return text


@dataclass
class Calculus:
    name: str
    mode: str
    axioms: list[RuleSchema]
    rules: list[RuleSchema]
    flags: dict = field(default_factory=dict)
    order: OrderSpec = field(default_factory=OrderSpec)
    classes: dict = field(default_factory=dict)
    source: str = ""
    order_checked: bool = True
    instance_cache: dict = field(default_factory=dict, repr=False, compare=False)
    facts: dict = field(default_factory=dict, repr=False, compare=False)

    def rule_class(self, rule: RuleSchema) -> RuleClass:
        return self.classes[rule.name]

    def flag(self, name: str) -> bool:
        return bool(self.flags.get(name, False))

    @property
    def has_modal_K(self) -> bool:
        return self.flag("has_modal_K")

    @property
    def has_modal_D(self) -> bool:
        return self.flag("has_modal_D")

    def without_rules(self, names: Iterable[str], new_name: Optional[str] = None) -> "Calculus":
        """A copy with the named rules removed (used by mutation tests)."""
        drop = set(names)
        return Calculus(
            name=new_name or f"{self.name}-minus-{'-'.join(sorted(drop))}",
            mode=self.mode,
            axioms=[a for a in self.axioms if a.name not in drop],
            rules=[r for r in self.rules if r.name not in drop],
            flags=dict(self.flags),
            order=self.order,
            classes={k: v for k, v in self.classes.items() if k not in drop},
            source=self.source,
            order_checked=self.order_checked,
        )

    def max_blocks(self) -> int:
        return max((len(self.classes[r.name].blocks) for r in self.rules), default=1)


# ------------------------------------------------------------------ parsing

def _meta_leaf(text: str, atomic: set[str]):
    def leaf(tok: Token) -> Formula:
        if tok.kind == "quoted":
            return Atom(tok.value[1:-1])
        if not tok.value[0].islower():
            raise ParseError("meta-formula variables must start with a lowercase letter", text, tok.pos)
        return MetaVar(tok.value, tok.value in atomic)

    return leaf


def _parse_meta_side(parser: FormulaParser, stop: set[str]) -> tuple[list[CtxVar], list[Formula]]:
    ctx: list[CtxVar] = []
    forms: list[Formula] = []
    if parser.tok.kind in stop:
        return ctx, forms
    while True:
        tok = parser.tok
        nxt = parser.tokens[parser.i + 1] if parser.i + 1 < len(parser.tokens) else tok
        if tok.kind == "ctx":
            parser.i += 1
            ctx.append(CtxVar(tok.value[1:]))
        elif tok.kind == "box" and nxt.kind == "ctx":
            parser.i += 2
            ctx.append(CtxVar(nxt.value[1:], boxed=True))
        else:
            forms.append(parser.formula())
        if parser.tok.kind == "comma":
            parser.i += 1
            continue
        if parser.tok.kind in stop:
            return ctx, forms
        raise parser.error(["comma", *stop])


def _parse_meta_sequent(parser: FormulaParser, stop: set[str]) -> MetaSequent:
    ant_ctx, ant_forms = _parse_meta_side(parser, {"arrow"})
    parser.expect("arrow")
    suc_ctx, suc_forms = _parse_meta_side(parser, stop)
    return MetaSequent(tuple(ant_ctx), tuple(ant_forms), tuple(suc_ctx), tuple(suc_forms))


_WHERE = re.compile(r"\s+where\s+(?P<names>[a-z][\w']*(?:\s*,\s*[a-z][\w']*)*)\s+atomic\s*$")


def parse_schema(name: str, body: str, is_axiom: bool) -> RuleSchema:
    """Parse the part of an ``axiom``/``rule`` line after the colon."""
    atomic: set[str] = set()
    m = _WHERE.search(body)
    if m:
        atomic = {n.strip() for n in m.group("names").split(",")}
        body = body[: m.start()]
    parser = FormulaParser(body, tokenize(body), _meta_leaf(body, atomic))
    if is_axiom:
        concl = _parse_meta_sequent(parser, {"eof"})
        return RuleSchema(name, (), concl)
    premises = [_parse_meta_sequent(parser, {"semi", "bar"})]
    while parser.tok.kind == "semi":
        parser.i += 1
        premises.append(_parse_meta_sequent(parser, {"semi", "bar"}))
    parser.expect("bar")
    concl = _parse_meta_sequent(parser, {"eof"})
    return RuleSchema(name, tuple(premises), concl)


def _check_single(rule: RuleSchema) -> None:
    for ms in (*rule.premises, rule.conclusion):
        if len(ms.suc_ctx) + len(ms.suc_forms) > 1:
            raise ModeError(f"{rule.name}: single-conclusion schema with succedent {ms}")


def parse_calculus(text: str, check_order: bool = True) -> Calculus:
    """Parse and validate a calculus definition.

    With ``check_order`` the rules are instantiated on a small grid and every
    premise must be smaller than its conclusion; a failure raises
    NonTerminatingError.
    """
    name = mode = None
    flags = {v: False for v in FLAG_NAMES.values()}
    order = OrderSpec()
    axioms: list[RuleSchema] = []
    rules: list[RuleSchema] = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line_start = offset
        offset += len(raw)
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "calculus":
            words = rest.replace(",", " ").replace("flags:", " ").replace("[", " ").replace("]", " ").split()
            if len(words) < 2 or words[1] not in MODES:
                raise ParseError("expected 'calculus <name> <single|multi> [flags]'", text, line_start, MODES)
            name, mode = words[0], words[1]
            for flag in words[2:]:
                if flag not in FLAG_NAMES:
                    raise ParseError(f"unknown flag {flag!r}", text, line_start, FLAG_NAMES)
                flags[FLAG_NAMES[flag]] = True
        elif keyword == "order":
            order = _parse_order(rest, text, line_start)
        elif keyword in ("axiom", "rule"):
            rule_name, colon, body = rest.partition(":")
            if not colon or not rule_name.strip():
                raise ParseError(f"expected '{keyword} <name>: ...'", text, line_start, ["':'"])
            try:
                schema = parse_schema(rule_name.strip(), body, keyword == "axiom")
            except ParseError as exc:
                raise ParseError(str(exc).rsplit(" at byte", 1)[0], text,
                                 line_start + len(raw) - len(raw.lstrip()) + len(keyword) + 1 + len(rule_name) + 1
                                 + exc.position, exc.expected) from None
            (axioms if keyword == "axiom" else rules).append(schema)
        else:
            raise ParseError(f"unknown directive {keyword!r}", text, line_start, ["calculus", "order", "axiom", "rule"])
    if name is None:
        raise ParseError("missing 'calculus' header", text, 0, ["calculus"])
    return build_calculus(name, mode, axioms, rules, flags, order, source=text, check_order=check_order)


def build_calculus(name, mode, axioms, rules, flags=None, order=None, source="", check_order=True) -> Calculus:
    flags = {v: False for v in FLAG_NAMES.values()} | dict(flags or {})
    seen = set()
    for schema in (*axioms, *rules):
        if schema.name in seen:
            raise CalculusError(f"duplicate schema name {schema.name!r}")
        seen.add(schema.name)
        if mode == "single":
            _check_single(schema)
    classes = {}
    for ax in axioms:
        classes[ax.name] = classify_rule(ax, mode)
    for rule in rules:
        rc = classify_rule(rule, mode)
        if not rc.ok:
            raise ClassificationError(rule.name, rc.reasons)
        if rc.kind not in ACCEPTED[mode]:
            raise ModeError(f"rule {rule.name!r} is {rc.kind}, not allowed in a {mode}-conclusion calculus")
        classes[rule.name] = rc
    kinds = {classes[r.name].kind for r in rules}
    if MODAL_K in kinds:
        flags["has_modal_K"] = True
    if MODAL_D in kinds:
        flags["has_modal_D"] = True
    if flags["has_modal_K"] and MODAL_K not in kinds:
        raise CalculusError("flag modal-K given but no K rule present")
    if flags["has_modal_D"] and MODAL_D not in kinds:
        raise CalculusError("flag modal-D given but no D rule present")
    if flags["has_modal_D"] and not flags["has_modal_K"]:
        raise CalculusError("a D rule requires the K rule to be present")
    calc = Calculus(name, mode, list(axioms), list(rules), flags, order or OrderSpec(), classes, source)
    if check_order:
        from .engine import schematic_order_violations
        from .errors import NonTerminatingError

        violations = schematic_order_violations(calc)
        if violations:
            first = violations[0]
            raise NonTerminatingError(f"order does not decrease for rule {first['rule']}: {first['detail']}", violations)
    else:
        calc.order_checked = False
    return calc


_WEIGHT_KEYS = {"/\\", "\\/", "->", "*", "+", "[]", "atom", "const"}


def _parse_order(rest: str, text: str, pos: int) -> OrderSpec:
    words = rest.split()
    if not words or words[0] not in ("additive", "exponential"):
        raise ParseError("expected 'order additive' or 'order exponential'", text, pos, ["additive", "exponential"])
    kind, base, weights = words[0], 2, []
    i = 1
    while i < len(words):
        if words[i] == "base" and i + 1 < len(words) and words[i + 1].isdigit():
            base = int(words[i + 1])
            i += 2
        elif words[i] == "weights":
            i += 1
        elif "=" in words[i]:
            key, _, value = words[i].partition("=")
            if key not in _WEIGHT_KEYS or not value.isdigit() or int(value) < 1:
                raise ParseError(f"bad weight {words[i]!r}", text, pos, sorted(_WEIGHT_KEYS))
            weights.append((key, int(value)))
            i += 1
        else:
            raise ParseError(f"unexpected {words[i]!r} in order line", text, pos, ["base", "weights"])
    if base < 2:
        raise ParseError("exponential base must be at least 2", text, pos)
    return OrderSpec(kind, base, tuple(weights))


# ---------------------------------------------------------- classification

def _leafset(forms: Iterable[Formula]) -> frozenset:
    return frozenset().union(*(f.leaves for f in forms))


def occurrence_ok(rule: RuleSchema, principal: Optional[Formula]) -> bool:
    """Variables and constants of all premise meta-formulas occur in the principal formula."""
    allowed = principal.leaves if principal is not None else frozenset()
    return _leafset(f for ms in rule.premises for f in ms.forms()) <= allowed


def _equal_vars(forms: tuple[Formula, ...]) -> bool:
    return len({f.leaves for f in forms}) <= 1


def classify_axiom(ms: MetaSequent, mode: str) -> RuleClass:
    ant_ctx, suc_ctx = ms.ant_ctx, ms.suc_ctx
    if any(c.boxed for c in ant_ctx + suc_ctx):
        return RuleClass(NOT_SEMI_ANALYTIC, (AXIOM_SHAPE,))
    if not ant_ctx and not suc_ctx:
        ant, suc = ms.ant_forms, ms.suc_forms
        if len(ant) == 1 and len(suc) == 1 and ant[0] is suc[0]:
            return RuleClass(FOCUSED_AXIOM, axiom_kind=1)
        if ant and suc or not ant and not suc:
            return RuleClass(NOT_SEMI_ANALYTIC, (AXIOM_SHAPE,))
        group, kind = (suc, 2) if suc else (ant, 3)
    elif len(ant_ctx) == 1 and len(suc_ctx) <= 1 and ant_ctx[0].name not in {c.name for c in suc_ctx}:
        if ms.ant_forms and not ms.suc_forms and suc_ctx:
            group, kind = ms.ant_forms, 4
        elif ms.suc_forms and not ms.ant_forms and (suc_ctx or mode == "single"):
            group, kind = ms.suc_forms, 5
        else:
            return RuleClass(NOT_SEMI_ANALYTIC, (AXIOM_SHAPE,))
    else:
        return RuleClass(NOT_SEMI_ANALYTIC, (AXIOM_SHAPE,))
    if not _equal_vars(group):
        return RuleClass(NOT_SEMI_ANALYTIC, (AXIOM_VARIABLES,))
    return RuleClass(FOCUSED_AXIOM, axiom_kind=kind)


def _classify_modal(rule: RuleSchema) -> RuleClass:
    bad = RuleClass(NOT_SEMI_ANALYTIC, (CONTEXT_SHAPE,))
    if len(rule.premises) != 1:
        return bad
    prem, concl = rule.premises[0], rule.conclusion
    if (
        len(prem.ant_ctx) != 1 or prem.ant_ctx[0].boxed or prem.ant_forms or prem.suc_ctx
        or len(concl.ant_ctx) != 1 or not concl.ant_ctx[0].boxed or concl.ant_forms or concl.suc_ctx
        or concl.ant_ctx[0].name != prem.ant_ctx[0].name
    ):
        return bad
    g = prem.ant_ctx[0].name
    if len(prem.suc_forms) == 1 and len(concl.suc_forms) == 1:
        x = prem.suc_forms[0]
        if concl.suc_forms[0] is Box(x):
            return RuleClass(MODAL_K, blocks=(g,), premise_blocks=(0,), premise_types=("T",))
        return bad
    if not prem.suc_forms and not concl.suc_forms:
        return RuleClass(MODAL_D, blocks=(g,), premise_blocks=(0,), premise_types=("S",))
    return bad


def classify_rule(rule: RuleSchema, mode: str) -> RuleClass:
    """Classify a schema; total, never raises."""
    if rule.is_axiom:
        return classify_axiom(rule.conclusion, mode)
    concl = rule.conclusion
    reasons: list[str] = []
    concl_names = concl.context_names()
    prem_names = set().union(*(p.context_names() for p in rule.premises))
    if not prem_names <= concl_names:
        reasons.append(CONTEXT_SHAPE)
    if any(c.boxed for ms in (*rule.premises, concl) for c in ms.ant_ctx + ms.suc_ctx):
        modal = _classify_modal(rule)
        if modal.ok and not reasons:
            return modal
        return RuleClass(NOT_SEMI_ANALYTIC, tuple(dict.fromkeys(reasons + list(modal.reasons))))
    principals = concl.forms()
    principal = principals[0] if len(principals) == 1 else None
    if not occurrence_ok(rule, principal):
        reasons.append(OCCURRENCE)
    if principal is None:
        reasons.append(PRINCIPAL_SHAPE)
        return RuleClass(NOT_SEMI_ANALYTIC, tuple(dict.fromkeys(reasons)))
    on_left = bool(concl.ant_forms)
    shape = _block_shape(rule, mode, on_left)
    if isinstance(shape, str):
        reasons.append(shape)
    if reasons:
        return RuleClass(NOT_SEMI_ANALYTIC, tuple(dict.fromkeys(reasons)))
    return shape


def _block_shape(rule: RuleSchema, mode: str, on_left: bool):
    """Check the context layout; return a RuleClass or a failure reason."""
    concl = rule.conclusion
    ant_names = [c.name for c in concl.ant_ctx]
    suc_names = [c.name for c in concl.suc_ctx]
    if len(set(ant_names)) != len(ant_names) or len(set(suc_names)) != len(suc_names) or set(ant_names) & set(suc_names):
        return CONTEXT_SHAPE
    blocks: list[str] = []
    premise_blocks: list[int] = []
    premise_types: list[str] = []
    block_succ: dict[str, Optional[str]] = {}
    for prem in rule.premises:
        if len(prem.ant_ctx) != 1 or prem.ant_ctx[0].name not in ant_names:
            return CONTEXT_SHAPE
        g = prem.ant_ctx[0].name
        if g not in blocks:
            blocks.append(g)
        premise_blocks.append(blocks.index(g))
        sc = [c.name for c in prem.suc_ctx]
        if any(n not in suc_names for n in sc):
            return CONTEXT_SHAPE
        if mode == "single":
            if sc and not prem.suc_forms and len(sc) == 1:
                premise_types.append("S")
            elif not sc and len(prem.suc_forms) <= 1:
                premise_types.append("T")
            else:
                return SUCCEDENT_SHAPE
        else:
            if len(sc) != 1:
                return SUCCEDENT_SHAPE
            premise_types.append("S")
        if premise_types[-1] == "S":
            d = sc[0]
            if block_succ.setdefault(g, d) != d:
                return SUCCEDENT_SHAPE
    if set(blocks) != set(ant_names):
        return CONTEXT_SHAPE
    attached = [d for d in block_succ.values()]
    if len(set(attached)) != len(attached) or set(attached) != set(suc_names):
        return SUCCEDENT_SHAPE
    info = dict(blocks=tuple(blocks), premise_blocks=tuple(premise_blocks), premise_types=tuple(premise_types))
    if mode == "multi":
        if set(block_succ) != set(blocks):
            return SUCCEDENT_SHAPE
        return RuleClass(LEFT_MULTI if on_left else RIGHT_MULTI, **info)
    if not on_left:
        if suc_names or "S" in premise_types:
            return SUCCEDENT_SHAPE
        return RuleClass(RIGHT, **info)
    kinds_per_block = [
        {t for t, b in zip(premise_types, premise_blocks) if b == i} for i in range(len(blocks))
    ]
    if any(k == {"S", "T"} for k in kinds_per_block):
        if any(k == {"T"} for k in kinds_per_block):
            return CONTEXT_SHAPE
        return RuleClass(CONTEXT_SHARING, **info)
    return RuleClass(LEFT, **info)


# ------------------------------------------------------------- matching

def unify(pattern: Formula, target: Formula, binding: dict) -> Optional[dict]:
    """Extend ``binding`` so that ``pattern`` instantiates to ``target``; None if impossible."""
    if isinstance(pattern, MetaVar):
        bound = binding.get(pattern.name)
        if bound is not None:
            return binding if bound is target else None
        if pattern.atomic and not isinstance(target, Atom):
            return None
        out = dict(binding)
        out[pattern.name] = target
        return out
    if isinstance(pattern, (Atom, Const)):
        return binding if pattern is target else None
    if isinstance(pattern, Bin):
        if not isinstance(target, Bin) or target.op != pattern.op:
            return None
        inner = unify(pattern.left, target.left, binding)
        return None if inner is None else unify(pattern.right, target.right, inner)
    if isinstance(pattern, Box):
        return unify(pattern.inner, target.inner, binding) if isinstance(target, Box) else None
    return None


def instantiate_formula(pattern: Formula, binding: dict) -> Formula:
    if isinstance(pattern, MetaVar):
        try:
            return binding[pattern.name]
        except KeyError:
            raise KeyError(f"meta-variable {pattern.name} is unbound") from None
    if isinstance(pattern, Bin):
        return Bin(pattern.op, instantiate_formula(pattern.left, binding), instantiate_formula(pattern.right, binding))
    if isinstance(pattern, Box):
        return Box(instantiate_formula(pattern.inner, binding))
    return pattern


def _ctx_value(c: CtxVar, binding: dict) -> FMultiset:
    ms = binding["$" + c.name]
    return ms.map(Box) if c.boxed else ms


def instantiate(ms: MetaSequent, binding: dict) -> Sequent:
    """Substitute meta-variables (``name``) and context variables (``$name``)."""
    ant = FMultiset([instantiate_formula(f, binding) for f in ms.ant_forms])
    suc = FMultiset([instantiate_formula(f, binding) for f in ms.suc_forms])
    for c in ms.ant_ctx:
        ant = ant + _ctx_value(c, binding)
    for c in ms.suc_ctx:
        suc = suc + _ctx_value(c, binding)
    return Sequent(ant, suc)


def match_forms(patterns: tuple[Formula, ...], ms: FMultiset, binding: dict) -> Iterator[tuple[dict, FMultiset]]:
    """Match each pattern to a distinct occurrence in ``ms``; yield (binding, residual)."""
    if not patterns:
        yield binding, ms
        return
    head, rest = patterns[0], patterns[1:]
    for f in ms.distinct():
        extended = unify(head, f, binding)
        if extended is not None:
            yield from match_forms(rest, ms.remove_one(f), extended)


def splits(ms: FMultiset, k: int) -> Iterator[tuple[FMultiset, ...]]:
    """All ordered ways to distribute ``ms`` over ``k`` parts (canonical order)."""
    if k == 0:
        if not ms:
            yield ()
        return
    if k == 1:
        yield (ms,)
        return
    items = ms.items
    per_item = [list(_compositions(n, k)) for _, n in items]
    for choice in product(*per_item):
        parts = []
        for j in range(k):
            parts.append(FMultiset.from_counts({f: c[j] for (f, _), c in zip(items, choice) if c[j]}))
        yield tuple(parts)


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, k - 1):
            yield (first, *rest)


def assign_contexts(ctx: tuple[CtxVar, ...], residual: FMultiset, binding: dict) -> Iterator[dict]:
    """Distribute the residual multiset over context variables.

    Boxed variables only receive boxed formulas and are bound to the unboxed
    contents.
    """
    for parts in splits(residual, len(ctx)):
        out = dict(binding)
        for c, part in zip(ctx, parts):
            if c.boxed:
                if not all(isinstance(f, Box) for f in part.distinct()):
                    break
                part = part.map(lambda f: f.inner)
            key = "$" + c.name
            if out.setdefault(key, part) != part:
                break
        else:
            yield out


def match_conclusion(ms: MetaSequent, s: Sequent) -> Iterator[dict]:
    """All bindings under which ``ms`` instantiates to ``s``."""
    for b1, ant_rest in match_forms(ms.ant_forms, s.ant, {}):
        for b2, suc_rest in match_forms(ms.suc_forms, s.suc, b1):
            for b3 in assign_contexts(ms.ant_ctx, ant_rest, b2):
                yield from assign_contexts(ms.suc_ctx, suc_rest, b3)


def axiom_instances(axiom: RuleSchema, s: Sequent) -> list[dict]:
    """Every binding making ``s`` an instance of the axiom (deduplicated)."""
    seen = []
    for b in match_conclusion(axiom.conclusion, s):
        if b not in seen:
            seen.append(b)
    return seen


def axiom_group(axiom: RuleSchema, kind: int) -> tuple[tuple[Formula, ...], str]:
    """The distinguished formula group of a focused axiom and the side it sits on."""
    ms = axiom.conclusion
    if kind in (2, 5):
        return ms.suc_forms, "suc"
    return ms.ant_forms, "ant"


def group_instances(axiom: RuleSchema, kind: int, pool: FMultiset) -> Iterator[tuple[FMultiset, dict]]:
    """Instances of the axiom's formula group occurring as a sub-multiset of ``pool``."""
    group, _ = axiom_group(axiom, kind)
    seen = set()
    for binding, rest in match_forms(group, pool, {}):
        inst = pool - rest
        if inst not in seen:
            seen.add(inst)
            yield inst, binding


def superset_instances(axiom: RuleSchema, kind: int, part: FMultiset) -> Iterator[FMultiset]:
    """Instances of the axiom's group that contain ``part`` as a sub-multiset.

    Every element of a focused group has the same variables, so matching one
    occurrence from a non-empty ``part`` binds all meta-variables.
    """
    group, _ = axiom_group(axiom, kind)
    if not part:
        return
    seen = set()
    n = len(group)
    for idx in range(n):
        for f in part.distinct():
            binding = unify(group[idx], f, {})
            if binding is None:
                continue
            try:
                inst = FMultiset([instantiate_formula(g, binding) for g in group])
            except KeyError:
                continue
            if part <= inst and inst not in seen:
                seen.add(inst)
                yield inst


def builtin_names() -> list[str]:
    names = []
    for path in sorted(resources.files("seqinterp").joinpath("calculi").iterdir()):
        if path.name.endswith(".seq") and path.name != "flec.seq":
            names.append(_header_name(path.read_text()))
    return names


def _header_name(text: str) -> str:
    for line in text.splitlines():
        if line.startswith("calculus "):
            return line.split()[1]
    raise CalculusError("missing calculus header")


@lru_cache(maxsize=None)
def _builtin_text(name: str) -> str:
    path = resources.files("seqinterp").joinpath("calculi", f"{name.lower()}.seq")
    if not path.is_file():
        raise CalculusError(f"unknown built-in calculus {name!r}; known: {', '.join(builtin_names())}")
    return path.read_text()


def load_builtin(name: str) -> Calculus:
    """A fresh Calculus for a shipped DSL file, e.g. ``FLe`` or ``CFLew-KD``."""
    return parse_calculus(_builtin_text(name))


def load_calculus(ref: str, check_order: bool = True) -> Calculus:
    """Load a built-in by name or a DSL file by path."""
    path = Path(ref)
    if path.suffix == ".seq" or path.is_file():
        return parse_calculus(path.read_text(encoding="utf-8"), check_order=check_order)
    return load_builtin(ref)


def rule_schema_text(rule: RuleSchema) -> str:
    keyword = "axiom" if rule.is_axiom else "rule"
    return f"{keyword} {rule}"


__all__ = [
    "MetaVar", "CtxVar", "MetaSequent", "RuleSchema", "RuleClass", "Calculus", "OrderSpec",
    "parse_calculus", "parse_schema", "build_calculus", "classify_rule", "classify_axiom", "axiom_instances",
    "instantiate", "match_conclusion", "splits", "unify", "occurrence_ok", "load_builtin", "load_calculus",
    "builtin_names",
]
