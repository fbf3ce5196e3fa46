"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "PebbleBenchError",
    "GraphError",
    "ParseError",
    "IllegalMove",
    "IncompletePebbling",
    "BadMerge",
    "BadInflation",
    "BadPivot",
    "TautologicalResolvent",
    "VerificationError",
    "SizeBoundExceeded",
    "BudgetTooSmall",
    "UnsupportedFamily",
    "UnsupportedOperation",
]


class PebbleBenchError(Exception):
    """Base class for all domain errors raised by this package."""


class GraphError(PebbleBenchError):
    """Structurally invalid graph (bad vertex ids, bad targets, ...)."""


class ParseError(PebbleBenchError):
    """Malformed text input.  Carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IllegalMove(PebbleBenchError):
    """A pebbling or blob move that violates the game rules.

    ``index`` is the 0-based position of the offending move when the error
    comes out of a trace validator, or ``None`` for single-step checks.  The
    message renders it 1-based to match line numbering in move files.
    """

    def __init__(self, reason: str, index: int | None = None):
        self.reason = reason
        self.index = index
        if index is not None:
            super().__init__(f"move {index + 1}: {reason}")
        else:
            super().__init__(reason)


class IncompletePebbling(PebbleBenchError):
    """A legal move sequence that does not form a complete pebbling."""


class BadMerge(IllegalMove):
    """Merge preconditions violated (pivot placement or disjointness)."""


class BadInflation(IllegalMove):
    """Inflation preconditions violated."""


class BadPivot(PebbleBenchError):
    """Resolution step whose pivot does not appear with the right signs."""


class TautologicalResolvent(PebbleBenchError):
    """Resolution step that would produce a clause with x and not-x."""


class VerificationError(PebbleBenchError):
    """Refutation checking failure.

    ``index`` is the 0-based event index; the message renders it 1-based to
    match line numbering in trace files.
    """

    def __init__(self, reason: str, index: int | None = None):
        self.reason = reason
        self.index = index
        if index is not None:
            super().__init__(f"event {index + 1}: {reason}")
        else:
            super().__init__(reason)


class SizeBoundExceeded(PebbleBenchError):
    """Instance is larger than the exhaustive search is willing to chew on."""


class BudgetTooSmall(PebbleBenchError):
    """Strategy space budget below the generator's minimum.

    ``minimum`` is the smallest budget the generator accepts for the
    instance, so callers can retry.
    """

    def __init__(self, budget: int, minimum: int):
        self.budget = budget
        self.minimum = minimum
        super().__init__(f"space budget {budget} below strategy minimum {minimum}")


class UnsupportedFamily(PebbleBenchError):
    """Operation asked for a graph family it does not know how to handle."""


class UnsupportedOperation(PebbleBenchError):
    """Combination of inputs the implementation deliberately does not cover
    (for example compiling black-white traces, or blob traces at d > 1)."""
