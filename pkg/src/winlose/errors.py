"""Exception hierarchy shared by every stage of the reduction toolkit."""

from __future__ import annotations


class WinLoseError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(WinLoseError, ValueError):
    """Profile or matrix shapes do not agree."""


class InvalidProfileError(WinLoseError, ValueError):
    """A vector is not a probability distribution."""


class ZeroMassError(WinLoseError, ArithmeticError):
    """Renormalization of a vector whose entries sum to zero."""


class DegenerateMassError(ZeroMassError):
    """A primary index received zero probability during translate-back."""


class ThresholdError(WinLoseError, ValueError):
    """An approximation parameter lies outside the regime a guarantee needs.

    ``step`` names the reduction step when raised from the pipeline.
    """

    def __init__(self, message: str, step: int | str | None = None):
        super().__init__(message)
        self.step = step


class NotAWsneError(WinLoseError, ValueError):
    """A profile's regret exceeds the claimed approximation."""


class MissingValueError(WinLoseError, KeyError):
    """An assignment leaves a circuit variable unassigned."""

    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class InvalidInstanceError(WinLoseError, ValueError):
    """An input instance fails structural validation.

    The failing :class:`~winlose.report.ValidationReport` is attached as
    ``report`` when one exists.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class PreconditionError(WinLoseError, ValueError):
    """A construction was called on an input it does not accept."""


class PatternError(WinLoseError, ValueError):
    """A column (or column pair) matches none of the encodable patterns."""


class MixedScaleError(PatternError):
    """A game carries both 8 and 4 payoffs, so the halving scale is ambiguous."""


class StageError(WinLoseError, RuntimeError):
    """An intermediate pipeline game failed its stage validator.

    This signals a bug in a construction, not a bad input.
    """

    def __init__(self, message: str, step: int, report=None):
        super().__init__(message)
        self.step = step
        self.report = report


class BudgetError(WinLoseError, RuntimeError):
    """A solver would exceed its configured work budget."""


class SolverError(WinLoseError, RuntimeError):
    """A solver produced a profile that failed its own verification."""


class ParseError(WinLoseError, ValueError):
    """A file in one of the shared formats is malformed.

    ``line`` and ``column`` are 1-based when the location is known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None, path: str | None = None):
        loc = []
        if path:
            loc.append(path)
        if line is not None:
            loc.append(f"line {line}, column {column}")
        text = f"{message} ({'; '.join(loc)})" if loc else message
        super().__init__(text)
        self.line = line
        self.column = column
        self.path = path


class TraceValidationError(WinLoseError, ValueError):
    """A reduction trace violates an ordering or shape invariant."""


# shorter name for callers that only deal with traces
ValidationError = TraceValidationError
