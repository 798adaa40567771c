"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class FuzzyPathError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FuzzyPathError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EmptyInput(FuzzyPathError, ValueError):
    pass


class ValidationError(FuzzyPathError, ValueError):
    """A value or network violates a structural invariant."""


class ParseError(FuzzyPathError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: str | None = None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class Unreachable(FuzzyPathError):
    def __init__(self, source, target):
        self.source = source
        self.target = target
        super().__init__(f"target {target} is unreachable from source {source}")


class InvalidPath(FuzzyPathError, ValueError):
    pass


class TooLarge(FuzzyPathError):
    """Exhaustive enumeration refused because the instance exceeds the guard."""


class RejectionExhausted(FuzzyPathError):
    def __init__(self, edge: int | None, attempts: int):
        self.edge = edge
        self.attempts = attempts
        what = "edge cost" if edge is None else f"cost of edge {edge}"
        super().__init__(
            f"{what} was negative in {attempts} consecutive draws; "
            "sigma/core ratio too large (see nonneg_feasible)"
        )
