"""Exception hierarchy shared by every module."""

from __future__ import annotations


class KempeError(Exception):
    """Base class for all library errors."""


class InvalidGraphError(KempeError, ValueError):
    pass


class AsymmetricRotationError(InvalidGraphError):
    pass


class SelfLoopError(InvalidGraphError):
    pass


class ParallelEdgeError(InvalidGraphError):
    pass


class EulerViolationError(InvalidGraphError):
    pass


class SurgeryError(KempeError, ValueError):
    """A graph surgery was asked to do something its preconditions forbid."""


class InvalidColoringError(KempeError, ValueError):
    pass


class InvalidMoveError(KempeError, ValueError):
    pass


class SequenceError(KempeError):
    """A recoloring sequence failed to replay or reached the wrong coloring."""

    def __init__(self, message: str, index: int | None = None) -> None:
        super().__init__(message)
        self.index = index


class CapExceededError(KempeError):
    pass


class PaperViolation(KempeError, AssertionError):
    """A step the underlying theory guarantees did not go through.

    Raised instead of silently degrading, so that a failing instance can be
    archived and inspected.
    """

    def __init__(self, message: str, payload: dict | None = None) -> None:
        super().__init__(message)
        self.payload = payload or {}
