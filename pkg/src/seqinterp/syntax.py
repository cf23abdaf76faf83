"""Object-language formulas, formula multisets and sequents.

Formulas are hash-consed: constructing the same formula twice returns the same
object, so equality is identity and hashing is cheap.  Every formula carries
its canonical printed text, which doubles as the sort key inside multisets.

Surface syntax (ASCII, with Unicode alternatives accepted on input)::

    formula ::= sum ('->' formula)?            right associative
    sum     ::= disj ('+' disj)*
    disj    ::= conj ('\\/' conj)*
    conj    ::= prod ('/\\' prod)*
    prod    ::= unary ('*' unary)*
    unary   ::= '~' unary | '[]' unary | leaf | '(' formula ')'
    leaf    ::= atom | '0' | '1' | 'top' | 'bot'
    sequent ::= [formula (',' formula)*] '=>' [formula (',' formula)*]

``~A`` is sugar for ``A -> 0``.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import reduce
from typing import Callable, Iterable, Iterator, Union

from .errors import ModeError, ParseError

AND, OR, IMP, TIMES, PLUS = "/\\", "\\/", "->", "*", "+"
BINARY_OPS = (AND, OR, IMP, TIMES, PLUS)
PRECEDENCE = {IMP: 1, PLUS: 2, OR: 3, AND: 4, TIMES: 5}
UNARY_PREC = 6

_TABLE: dict = {}


class Formula:
    """Base class of the formula AST.  Instances are immutable and interned."""

    __slots__ = ("text", "size", "prec", "_leaves", "__weakref__")

    def __setattr__(self, key, value):
        raise AttributeError("formulas are immutable")

    def _init(self, text: str, size: int, prec: int) -> None:
        object.__setattr__(self, "text", text)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "_leaves", None)

    def __repr__(self) -> str:
        return f"<{self.text}>"

    def __str__(self) -> str:
        return self.text

    def __lt__(self, other: "Formula") -> bool:
        return self.text < other.text

    def children(self) -> tuple["Formula", ...]:
        return ()

    @property
    def leaves(self) -> frozenset:
        """Atoms, constants (and, for meta-formulas, meta-variables) occurring in self."""
        if self._leaves is None:
            kids = self.children()
            found = frozenset([self]) if not kids else frozenset().union(*(k.leaves for k in kids))
            object.__setattr__(self, "_leaves", found)
        return self._leaves


def _intern(cls, key, build):
    obj = _TABLE.get(key)
    if obj is None:
        obj = object.__new__(cls)
        build(obj)
        _TABLE[key] = obj
    return obj


class Atom(Formula):
    __slots__ = ("name",)

    def __new__(cls, name: str):
        def build(obj):
            object.__setattr__(obj, "name", name)
            obj._init(name, 1, UNARY_PREC)

        return _intern(cls, ("atom", name), build)

    def __reduce__(self):
        return (Atom, (self.name,))


class Const(Formula):
    __slots__ = ("symbol",)
    SYMBOLS = ("0", "1", "top", "bot")

    def __new__(cls, symbol: str):
        if symbol not in cls.SYMBOLS:
            raise ValueError(f"unknown constant {symbol!r}")

        def build(obj):
            object.__setattr__(obj, "symbol", symbol)
            obj._init(symbol, 1, UNARY_PREC)

        return _intern(cls, ("const", symbol), build)

    def __reduce__(self):
        return (Const, (self.symbol,))


ZERO, ONE, TOP, BOT = Const("0"), Const("1"), Const("top"), Const("bot")


def _wrap(f: Formula, needs_parens: bool) -> str:
    return f"({f.text})" if needs_parens else f.text


class Bin(Formula):
    __slots__ = ("op", "left", "right")

    def __new__(cls, op: str, left: Formula, right: Formula):
        if op not in PRECEDENCE:
            raise ValueError(f"unknown connective {op!r}")

        def build(obj):
            object.__setattr__(obj, "op", op)
            object.__setattr__(obj, "left", left)
            object.__setattr__(obj, "right", right)
            size = left.size + right.size + 1
            if op == IMP and right is ZERO:
                obj._init("~" + _wrap(left, left.prec < UNARY_PREC), size, UNARY_PREC)
                return
            prec = PRECEDENCE[op]
            if op == IMP:
                lhs = _wrap(left, left.prec <= prec)
                rhs = _wrap(right, right.prec < prec)
            else:
                lhs = _wrap(left, left.prec < prec)
                rhs = _wrap(right, right.prec <= prec)
            obj._init(f"{lhs} {op} {rhs}", size, prec)

        return _intern(cls, ("bin", op, left, right), build)

    def children(self):
        return (self.left, self.right)

    def __reduce__(self):
        return (Bin, (self.op, self.left, self.right))


class Box(Formula):
    __slots__ = ("inner",)

    def __new__(cls, inner: Formula):
        def build(obj):
            object.__setattr__(obj, "inner", inner)
            obj._init("[]" + _wrap(inner, inner.prec < UNARY_PREC), inner.size + 1, UNARY_PREC)

        return _intern(cls, ("box", inner), build)

    def children(self):
        return (self.inner,)

    def __reduce__(self):
        return (Box, (self.inner,))


def neg(f: Formula) -> Formula:
    return Bin(IMP, f, ZERO)


def conj(f: Formula, g: Formula) -> Formula:
    return Bin(AND, f, g)


def disj(f: Formula, g: Formula) -> Formula:
    return Bin(OR, f, g)


def imp(f: Formula, g: Formula) -> Formula:
    return Bin(IMP, f, g)


def times(f: Formula, g: Formula) -> Formula:
    return Bin(TIMES, f, g)


def plus(f: Formula, g: Formula) -> Formula:
    return Bin(PLUS, f, g)


def _fold(op: str, unit: Formula, parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    if not parts:
        return unit
    return reduce(lambda a, b: Bin(op, a, b), parts)


# Big operators over finite families; the empty cases are the units.
def big_times(parts: Iterable[Formula]) -> Formula:
    return _fold(TIMES, ONE, parts)


def big_plus(parts: Iterable[Formula]) -> Formula:
    return _fold(PLUS, ZERO, parts)


def big_and(parts: Iterable[Formula]) -> Formula:
    return _fold(AND, TOP, parts)


def big_or(parts: Iterable[Formula]) -> Formula:
    return _fold(OR, BOT, parts)


def is_neg(f: Formula) -> bool:
    return isinstance(f, Bin) and f.op == IMP and f.right is ZERO


def render(f: Formula, quote_atoms: bool = False) -> str:
    """Print ``f``; with ``quote_atoms`` atoms are written ``'p'`` as in the rule DSL."""
    if not quote_atoms:
        return f.text
    if isinstance(f, Atom):
        return f"'{f.name}'"
    if isinstance(f, Box):
        inner = render(f.inner, True)
        return "[]" + (f"({inner})" if f.inner.prec < UNARY_PREC else inner)
    if isinstance(f, Bin):
        left, right = render(f.left, True), render(f.right, True)
        if is_neg(f):
            return "~" + (f"({left})" if f.left.prec < UNARY_PREC else left)
        prec = PRECEDENCE[f.op]
        if f.op == IMP:
            lp, rp = f.left.prec <= prec, f.right.prec < prec
        else:
            lp, rp = f.left.prec < prec, f.right.prec <= prec
        return f"{f'({left})' if lp else left} {f.op} {f'({right})' if rp else right}"
    return f.text


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    for kid in f.children():
        yield from subformulas(kid)


def substitute_atom(f: Formula, name: str, replacement: Formula) -> Formula:
    """Replace every occurrence of atom ``name`` in ``f``."""
    if isinstance(f, Atom):
        return replacement if f.name == name else f
    if isinstance(f, Bin):
        return Bin(f.op, substitute_atom(f.left, name, replacement), substitute_atom(f.right, name, replacement))
    if isinstance(f, Box):
        return Box(substitute_atom(f.inner, name, replacement))
    return f


class FMultiset:
    """Finite multiset of formulas in counted form, canonically ordered by text."""

    __slots__ = ("items", "_hash", "_len")

    def __init__(self, elements: Iterable[Formula] = ()):
        self._set_counts(Counter(elements))

    @classmethod
    def from_counts(cls, counts: dict) -> "FMultiset":
        ms = cls.__new__(cls)
        ms._set_counts(counts)
        return ms

    def _set_counts(self, counts) -> None:
        self.items = tuple(sorted(((f, n) for f, n in counts.items() if n > 0), key=lambda kv: kv[0].text))
        self._hash = hash(self.items)
        self._len = sum(n for _, n in self.items)

    def __len__(self) -> int:
        return self._len

    def __bool__(self) -> bool:
        return self._len > 0

    def __iter__(self) -> Iterator[Formula]:
        for f, n in self.items:
            for _ in range(n):
                yield f

    def __contains__(self, f: Formula) -> bool:
        return any(g is f for g, _ in self.items)

    def __eq__(self, other) -> bool:
        return isinstance(other, FMultiset) and self._hash == other._hash and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "{" + ", ".join(f.text if n == 1 else f"{f.text}:{n}" for f, n in self.items) + "}"

    def counts(self) -> dict:
        return dict(self.items)

    def count(self, f: Formula) -> int:
        for g, n in self.items:
            if g is f:
                return n
        return 0

    def distinct(self) -> tuple[Formula, ...]:
        return tuple(f for f, _ in self.items)

    def __add__(self, other: "FMultiset") -> "FMultiset":
        if not other:
            return self
        if not self:
            return other
        counts = dict(self.items)
        for f, n in other.items:
            counts[f] = counts.get(f, 0) + n
        return FMultiset.from_counts(counts)

    def __sub__(self, other: "FMultiset") -> "FMultiset":
        counts = dict(self.items)
        for f, n in other.items:
            if f in counts:
                counts[f] -= n
        return FMultiset.from_counts(counts)

    def __le__(self, other: "FMultiset") -> bool:
        theirs = dict(other.items)
        return all(theirs.get(f, 0) >= n for f, n in self.items)

    def remove_one(self, f: Formula) -> "FMultiset":
        counts = dict(self.items)
        counts[f] -= 1
        return FMultiset.from_counts(counts)

    def filter(self, keep: Callable[[Formula], bool]) -> "FMultiset":
        return FMultiset.from_counts({f: n for f, n in self.items if keep(f)})

    def map(self, fn: Callable[[Formula], Formula]) -> "FMultiset":
        return FMultiset(fn(f) for f in self)


EMPTY = FMultiset()


class Sequent:
    """A pair of formula multisets; ``ant`` is the antecedent and ``suc`` the succedent."""

    __slots__ = ("ant", "suc", "_hash", "_text")

    def __init__(self, ant: Iterable[Formula] | FMultiset = (), suc: Iterable[Formula] | FMultiset = ()):
        self.ant = ant if isinstance(ant, FMultiset) else FMultiset(ant)
        self.suc = suc if isinstance(suc, FMultiset) else FMultiset(suc)
        self._hash = hash((self.ant._hash, self.suc._hash))
        self._text = None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Sequent)
            and self._hash == other._hash
            and self.ant == other.ant
            and self.suc == other.suc
        )

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (Sequent, (self.ant, self.suc))

    @property
    def text(self) -> str:
        if self._text is None:
            left = ", ".join(f.text for f in self.ant)
            right = ", ".join(f.text for f in self.suc)
            self._text = " ".join(part for part in (left, "=>", right) if part)
        return self._text

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Sequent({self.text!r})"

    def __len__(self) -> int:
        return len(self.ant) + len(self.suc)

    def is_empty(self) -> bool:
        return not self.ant and not self.suc

    @property
    def size(self) -> int:
        return sum(f.size for f in self.ant) + sum(f.size for f in self.suc)

    def formulas(self) -> Iterator[Formula]:
        yield from self.ant
        yield from self.suc

    def is_valid(self, mode: str) -> bool:
        return mode != "single" or len(self.suc) <= 1

    def validate(self, mode: str) -> "Sequent":
        if not self.is_valid(mode):
            raise ModeError(f"sequent {self.text} has more than one succedent formula")
        return self


EMPTY_SEQUENT = Sequent()


def compose(s: Sequent, t: Sequent) -> Sequent:
    """Sequent multiplication: antecedents and succedents are joined as multisets."""
    if t.is_empty():
        return s
    if s.is_empty():
        return t
    return Sequent(s.ant + t.ant, s.suc + t.suc)


def compose_all(parts: Iterable[Sequent]) -> Sequent:
    return reduce(compose, parts, EMPTY_SEQUENT)


def tilde(s: Sequent) -> Sequent:
    """The antecedent-only part of ``s``."""
    return Sequent(s.ant, EMPTY) if s.suc else s


def vars(f: Formula) -> frozenset[str]:  # noqa: A001 - name fixed by the public interface
    """Names of the atoms and constants occurring in ``f``."""
    return frozenset(leaf.text for leaf in f.leaves)


def _atom_name(p: Union[str, Atom]) -> str:
    return p.name if isinstance(p, Atom) else p


def is_p_free(x: Union[Formula, FMultiset, Sequent], p: Union[str, Atom]) -> bool:
    atom = Atom(_atom_name(p))
    if isinstance(x, Formula):
        return atom not in x.leaves
    if isinstance(x, FMultiset):
        return all(atom not in f.leaves for f in x.distinct())
    return is_p_free(x.ant, atom) and is_p_free(x.suc, atom)


def p_part(ms: FMultiset, p: Union[str, Atom]) -> FMultiset:
    """The p-free sub-multiset of ``ms``."""
    atom = Atom(_atom_name(p))
    return ms.filter(lambda f: atom not in f.leaves)


# ---------------------------------------------------------------- tokenizer

_UNICODE = {"∧": "/\\", "∨": "\\/", "→": "->", "¬": "~", "□": "[]", "⊤": "top", "⊥": "bot", "⇒": "=>"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<bar>-{3,})
  | (?P<arrow>=>|⇒)
  | (?P<imp>->|→)
  | (?P<and>/\\|∧)
  | (?P<or>\\/|∨)
  | (?P<times>\*)
  | (?P<plus>\+)
  | (?P<not>~|¬)
  | (?P<box>\[\]|□)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
  | (?P<semi>;)
  | (?P<ctx>\$[A-Za-z][A-Za-z0-9_']*)
  | (?P<quoted>'[A-Za-z_][A-Za-z0-9_]*')
  | (?P<const>[01](?![0-9A-Za-z_])|⊤|⊥)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)

_TOKEN_NAMES = {
    "bar": "'---'", "arrow": "'=>'", "imp": "'->'", "and": "'/\\'", "or": "'\\/'", "times": "'*'",
    "plus": "'+'", "not": "'~'", "box": "'[]'", "lparen": "'('", "rparen": "')'", "comma": "','",
    "semi": "';'", "ctx": "context variable", "quoted": "quoted atom", "const": "constant",
    "ident": "identifier", "eof": "end of input",
}


class Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind: str, value: str, pos: int):
        self.kind, self.value, self.pos = kind, value, pos

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.value!r}, {self.pos})"


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos, _TOKEN_NAMES.values())
        kind = m.lastgroup
        if kind != "ws":
            value = _UNICODE.get(m.group(), m.group())
            if kind == "ident" and value in ("top", "bot"):
                kind = "const"
            tokens.append(Token(kind, value, pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


_LEVELS = [(PLUS, "plus"), (OR, "or"), (AND, "and"), (TIMES, "times")]
_STARTS = {"not", "box", "lparen", "const", "ident", "quoted"}


class FormulaParser:
    """Precedence-climbing parser over a token list.

    ``leaf`` turns an identifier or quoted-atom token into a formula; the rule
    DSL plugs in meta-variables here while plain formulas use atoms.
    """

    def __init__(self, text: str, tokens: list[Token], leaf: Callable[[Token], Formula] | None = None):
        self.text = text
        self.tokens = tokens
        self.i = 0
        self.leaf = leaf or _object_leaf(text)

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, expected) -> ParseError:
        tok = self.tok
        shown = repr(tok.value) if tok.kind != "eof" else "end of input"
        return ParseError(f"unexpected {shown}", self.text, tok.pos, [_TOKEN_NAMES[k] for k in expected])

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.error([kind])
        tok = self.tok
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self._level(0)
        if self.tok.kind == "imp":
            self.i += 1
            return Bin(IMP, left, self.formula())
        return left

    def _level(self, depth: int) -> Formula:
        if depth == len(_LEVELS):
            return self._unary()
        op, kind = _LEVELS[depth]
        result = self._level(depth + 1)
        while self.tok.kind == kind:
            self.i += 1
            result = Bin(op, result, self._level(depth + 1))
        return result

    def _unary(self) -> Formula:
        tok = self.tok
        if tok.kind == "not":
            self.i += 1
            return neg(self._unary())
        if tok.kind == "box":
            self.i += 1
            return Box(self._unary())
        if tok.kind == "lparen":
            self.i += 1
            inner = self.formula()
            self.expect("rparen")
            return inner
        if tok.kind == "const":
            self.i += 1
            return Const(tok.value)
        if tok.kind in ("ident", "quoted"):
            self.i += 1
            return self.leaf(tok)
        raise self.error(sorted(_STARTS))

    def formula_list(self, stop: set[str]) -> list[Formula]:
        items: list[Formula] = []
        if self.tok.kind in stop:
            return items
        items.append(self.formula())
        while self.tok.kind == "comma":
            self.i += 1
            items.append(self.formula())
        if self.tok.kind not in stop:
            raise self.error(["comma", *stop, "imp", "plus", "or", "and", "times"])
        return items


def _object_leaf(text: str) -> Callable[[Token], Formula]:
    def leaf(tok: Token) -> Formula:
        if tok.kind == "quoted":
            return Atom(tok.value[1:-1])
        return Atom(tok.value)

    return leaf


def parse_formula(text: str) -> Formula:
    parser = FormulaParser(text, tokenize(text))
    f = parser.formula()
    if parser.tok.kind != "eof":
        raise parser.error(["eof", "imp", "plus", "or", "and", "times"])
    return f


def parse_sequent(text: str) -> Sequent:
    parser = FormulaParser(text, tokenize(text))
    ant = parser.formula_list({"arrow"})
    parser.expect("arrow")
    suc = parser.formula_list({"eof"})
    return Sequent(ant, suc)


def parse_multiset(text: str) -> FMultiset:
    parser = FormulaParser(text, tokenize(text))
    return FMultiset(parser.formula_list({"eof"}))


def as_sequent(x: Union[str, Sequent]) -> Sequent:
    return parse_sequent(x) if isinstance(x, str) else x


def as_formula(x: Union[str, Formula]) -> Formula:
    return parse_formula(x) if isinstance(x, str) else x
