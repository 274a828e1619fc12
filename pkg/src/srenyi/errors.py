"""Exception types raised by the library.

Everything that indicates bad *data* derives from ValueError so that callers
who do not care about the fine distinctions can catch one base class.
Iteration failures derive from RuntimeError.
"""

from __future__ import annotations

__all__ = [
    "DiscontinuityError",
    "DivergentEscortError",
    "SupportViolationError",
    "LabelMismatchError",
    "TargetOutOfRangeError",
    "ConvergenceError",
    "SpectrumConsistencyError",
]


class DiscontinuityError(ValueError):
    """The order-0 mean has no limit because the values mix 0 and +inf."""


class DivergentEscortError(ValueError):
    """An escort weight is infinite, so the escort cannot be normalized."""


class SupportViolationError(ValueError):
    """A ratio or comparison needs support containment that does not hold."""

    def __init__(self, message: str, labels: tuple[str, ...] = ()):
        super().__init__(message)
        self.labels = labels


class LabelMismatchError(ValueError):
    """Two labeled measures do not carry the same label set."""


class TargetOutOfRangeError(ValueError):
    """A requested probability lies outside the attainable range."""


class ConvergenceError(RuntimeError):
    """An iterative search exhausted its iteration budget."""


class SpectrumConsistencyError(ArithmeticError):
    """A computed spectrum violates its own monotonicity/consistency laws."""
