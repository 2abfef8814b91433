"""Exception hierarchy shared by the resolvers."""

from __future__ import annotations


class DesingError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DesingError, ValueError):
    """Malformed polynomial or fan text.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariableError(ParseError):
    def __init__(self, name: str, position: int | None = None):
        self.name = name
        super().__init__(f"unknown variable {name!r}", position)


class RingMismatchError(DesingError, ValueError):
    pass


class PreconditionError(DesingError, ValueError):
    """An operation was called outside its domain (zero polynomial, bad center, ...)."""


class NotBinomialError(PreconditionError):
    pass


class IrrationalPointError(DesingError):
    """A singular point with non-rational coordinates was detected.

    ``degree`` is the degree of the minimal polynomial of the offending
    coordinate over Q.
    """

    def __init__(self, message: str, degree: int):
        self.degree = degree
        super().__init__(message)


class BudgetExceeded(DesingError):
    """The blow-up budget ran out. ``partial`` holds the tree built so far."""

    def __init__(self, message: str, partial=None):
        self.partial = partial
        super().__init__(message)


class InvariantViolation(DesingError, AssertionError):
    """An internal invariant (e.g. strict decrease of the resolution invariant) failed."""
