"""Exception types shared across the package."""

from __future__ import annotations


class ParseError(SyntaxError):
    """Malformed formula, sequent or calculus text.

    ``offset`` is a byte offset into the UTF-8 encoding of the input and
    ``expected`` is the set of token kinds that would have been accepted.
    """

    def __init__(self, message: str, text: str, position: int, expected=()):
        self.position = position
        self.byte_offset = len(text[:position].encode("utf-8"))
        self.expected = frozenset(expected)
        detail = message
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(f"{detail} at byte {self.byte_offset}")
        self.text = text
        self.offset = self.byte_offset


class CalculusError(ValueError):
    """Base class for problems with a calculus definition."""


class ClassificationError(CalculusError):
    def __init__(self, rule: str, reasons):
        self.rule = rule
        self.reasons = tuple(reasons)
        super().__init__(f"rule {rule!r} is not semi-analytic: {', '.join(self.reasons)}")


class ModeError(CalculusError):
    """A sequent, rule or interpolation mode is incompatible with the calculus mode."""


class NonTerminatingError(CalculusError):
    def __init__(self, message: str, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"proof search exceeded node budget {budget}")


class RecursionInvariantViolation(RuntimeError):
    """An interpolant recursion step did not descend in the calculus order."""


class InterpolantTooLarge(RuntimeError):
    def __init__(self, size: int, ceiling: int, sequent: str):
        self.size = size
        self.ceiling = ceiling
        super().__init__(f"interpolant for {sequent} has {size} nodes, above the ceiling {ceiling}")
