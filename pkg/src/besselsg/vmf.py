"""von Mises-Fisher distributions on ``S^{n-1}``: norming constant, density,
sphere-integral and log-derivative checks, and inversion of the mean
resultant length ``rbar = y_{n/2-1}(z)`` for the concentration ``z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .quadrature import QuadratureSpec, integrate_interval
from .special_fn import bessel_quotient, log_lambda, quotient_and_complement, quotient_derivative


@dataclass(frozen=True)
class VmfSpec:
    n: int
    omega: tuple[float, ...]
    z: float

    def __post_init__(self) -> None:
        _check_n(self.n)
        if len(self.omega) != self.n:
            raise DomainError("omega must have n components")
        if abs(math.sqrt(sum(w * w for w in self.omega)) - 1.0) > 1e-12:
            raise DomainError("omega must be a unit vector")
        if not (self.z >= 0.0 and math.isfinite(self.z)):
            raise DomainError("z must be finite and nonnegative")


def _check_n(n) -> int:
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n}")
    return int(n)


def log_norming_constant(n: int, z: float) -> float:
    """``log a_n(z)`` with ``a_n(z) = (z/2)^{n/2-1} / (Gamma(n/2) I_{n/2-1}(z))``."""
    n = _check_n(n)
    if not z >= 0.0:
        raise DomainError("z must be nonnegative")
    nu = 0.5 * n - 1.0
    # (z/2)^nu / I_nu(z) = 1 / (2^nu Lambda_nu(z)), which is finite at z = 0
    return -math.lgamma(nu + 1.0) - nu * math.log(2.0) - float(log_lambda(nu, z))


def norming_constant(n: int, z: float) -> float:
    return math.exp(log_norming_constant(n, z))


def density(spec: VmfSpec, x) -> float:
    """``a_n(z) exp(z <omega, x>)`` with respect to normalized surface measure."""
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.n,):
        raise DomainError("x must have n components")
    if abs(float(np.linalg.norm(x)) - 1.0) > 1e-12:
        raise DomainError("x must be a unit vector")
    return math.exp(log_norming_constant(spec.n, spec.z) + spec.z * float(np.dot(spec.omega, x)))


def sphere_average(n: int, z: float, spec: QuadratureSpec | None = None) -> float:
    """Average of ``exp(z <omega, x>)`` over ``S^{n-1}`` by latitude quadrature (``n`` in {2, 3})."""
    n = _check_n(n)
    spec = spec or QuadratureSpec(rel_tol=1e-13)
    if n == 2:
        return integrate_interval(lambda th: np.exp(z * np.cos(th)), 0.0, math.pi, spec).value / math.pi
    if n == 3:
        return 0.5 * integrate_interval(lambda s: np.exp(z * s), -1.0, 1.0, spec).value
    raise DomainError("latitude quadrature is provided for n = 2 and n = 3 only")


def sphere_integral_check(n: int, z: float, tol: float = 1e-9) -> float:
    """Relative gap between the quadrature average and ``1/a_n(z)``."""
    z = float(z)
    closed = math.exp(-log_norming_constant(n, z))
    rel = min(1e-13, 0.01 * tol)
    return abs(sphere_average(n, z, QuadratureSpec(rel_tol=rel)) / closed - 1.0)


def density_normalization(n: int, z: float) -> float:
    """Latitude quadrature of the density itself (should be 1)."""
    return norming_constant(n, z) * sphere_average(n, z)


def log_norming_identity_check(n: int, z: float) -> float:
    """``|d/dz log(1/a_n)`` by central difference ``- y_{n/2-1}(z)|``."""
    n = _check_n(n)
    if not z > 0.0:
        raise DomainError("z must be positive")
    h = 1e-5 * max(1.0, z)
    lo = max(z - h, 0.0)
    fd = (log_norming_constant(n, lo) - log_norming_constant(n, z + h)) / (z + h - lo)
    return abs(fd - float(bessel_quotient(0.5 * n - 1.0, z)))


@dataclass(frozen=True)
class ConcentrationEstimate:
    z: float
    rbar: float
    iterations: int
    residual: float


def estimate_concentration(n: int, rbar: float, tol: float = 1e-12) -> ConcentrationEstimate:
    """Solve ``y_{n/2-1}(z) = rbar`` for ``z``.

    The quotient rises strictly from 0 to 1 for ``n >= 2``, so a bracket is
    grown geometrically, bisected to width ``1e-2`` and finished by Newton
    steps that fall back to bisection whenever they leave the bracket.  Near
    ``rbar = 1`` the equation is solved as ``1 - y = 1 - rbar`` to keep digits.
    """
    n = _check_n(n)
    if not 0.0 < rbar < 1.0:
        raise DomainError(f"rbar must lie in (0, 1), got {rbar}")
    nu = 0.5 * n - 1.0
    target_c = 1.0 - rbar

    def resid(z: float) -> float:
        y, c = quotient_and_complement(nu, np.array([z]))
        return float(y[0]) - rbar if rbar < 0.5 else target_c - float(c[0])

    lo, hi = 0.0, 1.0
    its = 0
    while resid(hi) < 0.0:
        lo, hi = hi, 2.0 * hi
        its += 1
        if hi > 1e300:
            raise ConvergenceError("could not bracket the concentration")
    while hi - lo > 1e-2:
        mid = 0.5 * (lo + hi)
        r = resid(mid)
        if r < 0.0:
            lo = mid
        else:
            hi = mid
        its += 1
    z = 0.5 * (lo + hi)
    for _ in range(200):
        its += 1
        r = resid(z)
        if abs(r) <= tol:
            break
        if r < 0.0:
            lo = z
        else:
            hi = z
        d = float(quotient_derivative(nu, z))
        if not d > 0.0:
            raise ConvergenceError(f"quotient not increasing at z = {z}")
        step = z - r / d
        z = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4.0 * np.finfo(float).eps * hi:
            break  # bracket at float resolution; the residual is as small as it gets
    else:
        raise ConvergenceError("Newton iteration did not converge")
    return ConcentrationEstimate(z, rbar, its, abs(resid(z)))
