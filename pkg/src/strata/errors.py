"""Exception hierarchy shared by the whole kernel.

Three failure families matter to callers and are kept distinct:

* ``ParseInputError`` -- malformed user input (polynomial text, job files);
* ``MathPreconditionError`` -- structurally valid input that violates a
  mathematical precondition of an operation (wrong ring, inhomogeneous
  generators, non-nested pair, ...);
* ``BudgetExceededError`` -- a computation ran out of its resource budget.
  This is recoverable: callers may retry with a larger budget or accept a
  partial, flagged result.
"""

from __future__ import annotations


class StrataError(Exception):
    """Base class for every error raised by this package."""


class ParseInputError(StrataError):
    """Malformed textual input; carries a human-readable position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class JobError(StrataError):
    """A job document is malformed or references unknown fields."""


class MathPreconditionError(StrataError):
    """Mathematically invalid request (unit ideal, ring mismatch, ...)."""


class RingMismatchError(MathPreconditionError):
    """Operands live in different ring contexts."""


class BudgetExceededError(StrataError):
    """Computation exceeded its resource budget; partial data may be attached."""

    def __init__(self, message: str, partial=None):
        self.partial = partial
        super().__init__(message)
