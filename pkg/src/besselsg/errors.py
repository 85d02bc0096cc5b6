"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ConvergenceError(ArithmeticError):
    """An iterative or adaptive routine stopped before meeting its tolerance."""


class DegenerateDatum(ArithmeticError):
    """A semigroup value is too small to take its logarithm reliably."""


class UndefinedFrequency(ArithmeticError):
    """The height functional vanishes, so the frequency ratio is undefined."""


class UnsupportedKappa(ValueError):
    """No closed-form homogeneous caloric field is available for this degree."""
