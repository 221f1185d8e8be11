"""Exception types shared across the package."""

from __future__ import annotations


class RbavgError(Exception):
    """Base class for all package-specific errors."""


class InvalidParams(RbavgError):
    """A parameter record violates one of its stated invariants.

    `constraint` names the violated condition, `index` the offending row or
    sequence position when there is one.
    """

    def __init__(self, message: str, *, constraint: str | None = None, index=None):
        super().__init__(message)
        self.constraint = constraint
        self.index = index


class CoverageError(RbavgError):
    """A table or finite sequence was asked for a value beyond its declared
    coverage.  Checks raise this instead of silently passing on unverified
    instances."""


class ZeroScalarError(RbavgError):
    """Scaling an operator by zero is not invertible and is rejected."""


class DegenerateDenominator(RbavgError):
    """A closed-form coefficient denominator vanishes at a support point."""

    def __init__(self, message: str, *, index=None):
        super().__init__(message)
        self.index = index


class NotAProgression(RbavgError):
    """A support set is not an arithmetic-progression prefix."""

    def __init__(self, message: str, *, element: int | None = None):
        super().__init__(message)
        self.element = element


class Unclassifiable(RbavgError):
    """No classified family reproduces the given coefficient table."""


class UnknownPreset(RbavgError):
    """Requested preset name does not exist."""
