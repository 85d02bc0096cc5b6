"""Carre du champ calculus for the Bessel generator ``B f = f'' + (a/z) f'``.

``Gamma(f) = f'^2`` and ``Gamma_2(f) = f''^2 + (a/z^2) f'^2``, with the
curvature-dimension identity

    Gamma_2(f) - (B f)^2 / (a+1) = a/(a+1) (f'' - f'/z)^2,

so ``CD(0, a+1)`` holds exactly when ``a >= 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError

Fn = Callable[[float], float]


@dataclass(frozen=True)
class SmoothProbe:
    """A test function with its exact derivatives up to fourth order."""

    name: str
    derivs: tuple[Fn, Fn, Fn, Fn, Fn]

    def __post_init__(self) -> None:
        # spot-check each derivative against a central difference of the one before
        for z in (0.7, 1.9):
            h = 1e-5
            for k in range(4):
                fd = (self.derivs[k](z + h) - self.derivs[k](z - h)) / (2.0 * h)
                exact = self.derivs[k + 1](z)
                if abs(fd - exact) > 1e-6 * max(1.0, abs(exact)):
                    raise DomainError(f"probe {self.name}: derivative {k + 1} is inconsistent")

    def d(self, k: int, z: float) -> float:
        return self.derivs[k](z)


def _monomial(m: int) -> SmoothProbe:
    def term(k):
        if k > m:
            return lambda z: 0.0
        c = math.perm(m, k)
        return lambda z: c * z ** (m - k)

    return SmoothProbe("1" if m == 0 else ("z" if m == 1 else f"z^{m}"), tuple(term(k) for k in range(5)))


def _sine() -> SmoothProbe:
    return SmoothProbe("sin z", (math.sin, math.cos, lambda z: -math.sin(z), lambda z: -math.cos(z), math.sin))


def _decay() -> SmoothProbe:
    return SmoothProbe("exp(-z)", tuple((lambda s: (lambda z: s * math.exp(-z)))((-1.0) ** k) for k in range(5)))


PROBES: tuple[SmoothProbe, ...] = tuple(_monomial(m) for m in range(5)) + (_sine(), _decay())


def probe(name: str) -> SmoothProbe:
    for p in PROBES:
        if p.name == name:
            return p
    raise DomainError(f"unknown probe {name!r}; choose from {[p.name for p in PROBES]}")


def _check(a: float, z: float) -> None:
    if not a > -1.0:
        raise DomainError("a must exceed -1")
    if not z > 0.0:
        raise DomainError("z must be positive")


def generator(a: float, f: SmoothProbe, z: float) -> float:
    """``B f(z) = f''(z) + (a/z) f'(z)``."""
    _check(a, z)
    return f.d(2, z) + a / z * f.d(1, z)


def gamma1(f: SmoothProbe, z: float) -> float:
    if not z > 0.0:
        raise DomainError("z must be positive")
    return f.d(1, z) ** 2


def gamma2(a: float, f: SmoothProbe, z: float) -> float:
    """``f''^2 + (a/z^2) f'^2``."""
    _check(a, z)
    return f.d(2, z) ** 2 + a / (z * z) * f.d(1, z) ** 2


def gamma2_commutator(a: float, f: SmoothProbe, z: float) -> float:
    """``1/2 (B Gamma(f) - 2 Gamma(f, B f))`` expanded with exact derivatives.

    With ``g = f'^2``: ``B g = 2 f''^2 + 2 f' f''' + (2a/z) f' f''``, and
    ``(B f)' = f''' + (a/z) f'' - (a/z^2) f'``.
    """
    _check(a, z)
    f1, f2, f3 = f.d(1, z), f.d(2, z), f.d(3, z)
    b_gamma = 2.0 * f2 * f2 + 2.0 * f1 * f3 + 2.0 * a / z * f1 * f2
    bf_prime = f3 + a / z * f2 - a / (z * z) * f1
    return 0.5 * b_gamma - f1 * bf_prime


@dataclass(frozen=True)
class CdResidual:
    """``Gamma_2 - (Bf)^2/(a+1)`` directly and via the closed form."""

    direct: float
    closed_form: float
    scale: float

    @property
    def agreement(self) -> float:
        return abs(self.direct - self.closed_form) / self.scale


def cd_residual(a: float, f: SmoothProbe, z: float) -> CdResidual:
    _check(a, z)
    g2 = gamma2(a, f, z)
    bf = generator(a, f, z)
    direct = g2 - bf * bf / (a + 1.0)
    closed = a / (a + 1.0) * (f.d(2, z) - f.d(1, z) / z) ** 2
    return CdResidual(direct, closed, max(1.0, abs(g2), bf * bf / (a + 1.0)))
