"""Shared exception types.

Every error the library raises deliberately derives from RecLabError so the
CLI can map them onto exit codes (precision failures get their own code).
"""

from __future__ import annotations


class RecLabError(Exception):
    """Base class for all deliberate library errors."""


class EmptyInput(RecLabError):
    """An operation received a set with no usable elements."""


class NoElementsInWindow(RecLabError):
    """The window filter removed every element."""


class TooFewElements(RecLabError):
    """The operation needs more elements than were supplied."""


class InvalidArity(RecLabError):
    """Color count / arity outside the supported range."""


class MalformedCertificate(RecLabError):
    """A certificate object fails structural validation."""


class UncertainAtPrecision(RecLabError):
    """A comparison could not be decided within the tracked error bound.

    Carries optional context: ``margin`` (how close the call was) and
    ``ambiguous`` (e.g. the list of n values an enumeration could not place).
    """

    def __init__(self, message: str = "", margin=None, ambiguous=None):
        super().__init__(message or "comparison undecidable at current precision")
        self.margin = margin
        self.ambiguous = ambiguous or []


class NoSuchM(RecLabError):
    """No orbit-density constant exists (orbit too coarse for the target)."""


class WindowInadequate(RecLabError):
    """A declared data window is too small for the requested horizon."""


class NonIntegerPolynomial(RecLabError):
    """A polynomial generator produced a non-integer value."""


class PruningBudgetExceeded(RecLabError):
    """Interval pruning exceeded its work budget."""


class VerificationBudgetExceeded(RecLabError):
    """Independent certificate re-verification hit its safety cap."""
