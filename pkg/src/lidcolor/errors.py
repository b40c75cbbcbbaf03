"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class LidError(Exception):
    """Base class for every error raised by :mod:`lidcolor`."""


class UsageError(LidError, ValueError):
    """An argument violates the documented precondition of an operation."""


class ParseError(UsageError):
    """A graph, coloring or forest file could not be parsed."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class CapacityError(LidError):
    """The input exceeds a configured size limit of an exact solver."""


class InvariantError(LidError, AssertionError):
    """An internal invariant of a construction failed; always a bug signal."""
