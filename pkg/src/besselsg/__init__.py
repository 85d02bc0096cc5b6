"""Bessel quotient, Bessel heat semigroup and their sharp inequalities as checkable numerics."""

from .errors import (
    ConvergenceError,
    DegenerateDatum,
    DomainError,
    UndefinedFrequency,
    UnsupportedKappa,
)
from .special_fn import BesselParam, EvalResult, Method, Regime

__all__ = [
    "BesselParam",
    "ConvergenceError",
    "DegenerateDatum",
    "DomainError",
    "EvalResult",
    "Method",
    "Regime",
    "UndefinedFrequency",
    "UnsupportedKappa",
]
