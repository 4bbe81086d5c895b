"""Exception hierarchy shared by every calculator widget."""
from __future__ import annotations

from typing import Sequence


class CalculatorError(ValueError):
    """Base class for domain errors (CLI exit code 1)."""


class DimensionMismatchError(CalculatorError):
    def __init__(self, left: int, right: int):
        super().__init__(f"dimension mismatch {left} vs {right}")
        self.left = left
        self.right = right


class NegativeDegreeError(CalculatorError):
    pass


class InvalidAtomError(CalculatorError):
    pass


class SuspensionError(CalculatorError):
    pass


class BundleHypothesisError(CalculatorError):
    pass


class RealizabilityError(CalculatorError):
    pass


class FormulaConsistencyError(CalculatorError):
    """Raised when a closed-form formula contradicts its own side conditions."""


class DslSyntaxError(CalculatorError):
    """Parse failure in the manifold DSL (CLI exit code 2)."""

    def __init__(self, message: str, offset: int, expected: Sequence[str] = ()):
        self.offset = offset
        self.expected = tuple(expected)
        detail = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")
