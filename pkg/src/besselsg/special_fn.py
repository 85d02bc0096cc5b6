"""Modified Bessel functions of the first kind and the Bessel quotient.

Real order ``nu > -1`` and real argument ``z >= 0`` only.  Three evaluation
routes share one core:

* the power series, summed with positive terms only (no cancellation) and
  rescaled on the fly so large arguments cannot overflow;
* the Hankel asymptotic expansion for ``z >= 30 * max(1, nu**2)``, accepted
  only when its smallest-term truncation error is below double precision;
* a continued fraction for ``y_nu = I_{nu+1} / I_nu``, built from the
  three-term recurrence, so the quotient is never formed as a ratio of raw
  Bessel values.

Orders ``+-1/2`` use the elementary closed forms.  Every function accepts a
plain float order or a :class:`BesselParam`, and scalar or array arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import golden
from scipy.special import roots_jacobi

from .errors import ConvergenceError, DomainError

EPS = float(np.finfo(float).eps)
_LN10 = math.log(10.0)
_RESCALE = 1e250
_HANKEL_FACTOR = 30.0
_HANKEL_MAX_TERMS = 24
_HANKEL_ACCEPT = 2e-16


class Regime(Enum):
    SHARP = "sharp"          # a >= 0, nu >= -1/2
    SUB_SHARP = "sub-sharp"  # -1 < a < 0, -1 < nu < -1/2


class Method(Enum):
    SERIES = "series"
    HANKEL = "hankel"
    CLOSED_FORM = "closed-form-half-order"
    CONTINUED_FRACTION = "continued-fraction"


@dataclass(frozen=True)
class BesselParam:
    """The weight exponent ``a`` together with its Bessel order ``nu = (a-1)/2``."""

    a: float

    def __post_init__(self) -> None:
        if not self.a > -1.0:
            raise DomainError(f"a must exceed -1, got {self.a}")

    @classmethod
    def from_nu(cls, nu: float) -> BesselParam:
        return cls(2.0 * nu + 1.0)

    @property
    def nu(self) -> float:
        return 0.5 * (self.a - 1.0)

    @property
    def regime(self) -> Regime:
        return Regime.SHARP if self.a >= 0.0 else Regime.SUB_SHARP


@dataclass(frozen=True)
class EvalResult:
    value: float
    abs_error_estimate: float
    method: Method


def _order(p) -> float:
    nu = p.nu if isinstance(p, BesselParam) else float(p)
    if not nu > -1.0:
        raise DomainError(f"order must exceed -1, got {nu}")
    return nu


def _argument(z) -> tuple[np.ndarray, bool]:
    arr = np.asarray(z, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0):
        raise DomainError("argument must be finite and nonnegative")
    return np.atleast_1d(arr).astype(float, copy=True), arr.ndim == 0


def _out(arr: np.ndarray, scalar: bool):
    return float(arr[0]) if scalar else arr


def _half_order(nu: float) -> int:
    if nu == 0.5:
        return 1
    if nu == -0.5:
        return -1
    return 0


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

def _series(nu: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sum ``sum_k (z/2)^{2k} Gamma(nu+1) / (k! Gamma(k+nu+1))``.

    Returns ``(total, logscale, terms)`` with the true sum equal to
    ``total * exp(logscale)``.  Elementwise independent of the batch.
    """
    q = 0.25 * z * z
    total = np.ones_like(z)
    term = np.ones_like(z)
    logscale = np.zeros_like(z)
    nterms = np.zeros(z.shape, dtype=int)
    active = np.flatnonzero(q > 0.0)
    kmax = int(4.0 * float(np.max(z, initial=0.0))) + 200
    k = 0
    while active.size:
        k += 1
        if k > kmax:
            raise ConvergenceError("Bessel series did not converge")
        term[active] *= q[active] / (k * (k + nu))
        total[active] += term[active]
        big = active[total[active] > _RESCALE]
        if big.size:
            total[big] /= _RESCALE
            term[big] /= _RESCALE
            logscale[big] += 250.0 * _LN10
        nterms[active] = k
        active = active[term[active] >= 1e-17 * total[active]]
    return total, logscale, nterms


def _series_derivative(nu: float, z: np.ndarray) -> np.ndarray:
    """``I'_nu(z)`` from the termwise differentiated series (moderate z only)."""
    q = 0.25 * z * z
    lead = np.exp(nu * np.log(0.5 * z) - math.lgamma(nu + 1.0))
    term = np.ones_like(z)
    total = nu / z * term
    active = np.arange(z.size)
    k = 0
    while active.size:
        k += 1
        if k > 10_000:
            raise ConvergenceError("derivative series did not converge")
        term[active] *= q[active] / (k * (k + nu))
        total[active] += (nu + 2 * k) / z[active] * term[active]
        active = active[term[active] * (nu + 2 * k) >= 1e-17 * np.abs(total[active]) * z[active]]
    return lead * total


# ---------------------------------------------------------------------------
# Hankel expansion
# ---------------------------------------------------------------------------

def hankel_coefficient(nu: float, k: int) -> float:
    """Hankel coefficient ``(nu, k) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (4^k k!)``.

    The product form is the Gamma-ratio definition with the poles cancelled,
    so it is finite for every real order.
    """
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k}")
    mu = 4.0 * float(nu) ** 2
    value = 1.0
    for j in range(1, int(k) + 1):
        value *= (mu - (2 * j - 1) ** 2) / (4.0 * j)
    return value


def _hankel_terms(nu: float, z: np.ndarray, kmax: int = _HANKEL_MAX_TERMS) -> np.ndarray:
    """Rows ``k = 0..kmax`` of ``(-1)^k (nu,k) / (2z)^k``."""
    mu = 4.0 * nu * nu
    terms = np.empty((kmax + 1, z.size))
    terms[0] = 1.0
    for k in range(1, kmax + 1):
        terms[k] = terms[k - 1] * ((2 * k - 1) ** 2 - mu) / (8.0 * k * z)
    return terms


def _truncation_index(*term_sets: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per column, the last index to keep and whether truncation is accurate.

    A column is accepted when every series has reached a term below
    ``_HANKEL_ACCEPT`` while its terms were still decreasing in magnitude.
    """
    kmax = term_sets[0].shape[0] - 1
    mags = np.maximum.reduce([np.abs(t) for t in term_sets])
    small = mags < _HANKEL_ACCEPT
    growing = np.zeros_like(small)
    for ts in term_sets:
        a = np.abs(ts)
        growing[1:] |= (a[1:] > a[:-1]) & (a[1:] > 0.0)
    first_small = np.where(small.any(axis=0), small.argmax(axis=0), kmax + 1)
    first_grow = np.where(growing.any(axis=0), growing.argmax(axis=0), kmax + 1)
    ok = first_small < first_grow
    return np.minimum(first_small, kmax), ok


def _hankel_sum(nu: float, z: np.ndarray):
    terms = _hankel_terms(nu, z)
    idx, ok = _truncation_index(terms)
    keep = np.arange(terms.shape[0])[:, None] <= idx[None, :]
    total = np.where(keep, terms, 0.0).sum(axis=0)
    err = np.abs(terms[idx, np.arange(z.size)])
    return total, err, ok


# ---------------------------------------------------------------------------
# scaled Bessel core
# ---------------------------------------------------------------------------

def _ive_parts(nu: float, z: np.ndarray):
    """Return ``(mantissa, log_factor, rel_err, method)`` for ``e^{-z} I_nu(z)``.

    ``e^{-z} I_nu(z) = mantissa * exp(log_factor)``; requires ``z > 0``.
    """
    n = z.size
    mant = np.empty(n)
    logf = np.zeros(n)
    rel = np.empty(n)
    method = np.empty(n, dtype=object)
    half = _half_order(nu)
    if half:
        base = np.sqrt(2.0 / (math.pi * z))
        if half < 0:
            mant[:] = base * (1.0 + np.exp(-2.0 * z)) / 2.0
        else:
            mant[:] = base * (-np.expm1(-2.0 * z)) / 2.0
        rel[:] = 4.0 * EPS
        method[:] = Method.CLOSED_FORM
        return mant, logf, rel, method
    todo = np.ones(n, dtype=bool)
    big = z >= _HANKEL_FACTOR * max(1.0, nu * nu)
    if big.any():
        ib = np.flatnonzero(big)
        total, err, ok = _hankel_sum(nu, z[ib])
        ib, total, err = ib[ok], total[ok], err[ok]
        mant[ib] = total / np.sqrt(2.0 * math.pi * z[ib])
        rel[ib] = err / np.abs(total) + 4.0 * EPS
        method[ib] = Method.HANKEL
        todo[ib] = False
    if todo.any():
        it = np.flatnonzero(todo)
        total, logscale, nterms = _series(nu, z[it])
        mant[it] = total
        logf[it] = nu * (np.log(z[it]) - math.log(2.0)) - math.lgamma(nu + 1.0) + logscale - z[it]
        rel[it] = EPS * (2.0 * np.sqrt(nterms + 1.0) + np.abs(logf[it] + np.log(total)) + 4.0)
        method[it] = Method.SERIES
    return mant, logf, rel, method


def bessel_i_scaled(p, z):
    """``e^{-z} I_nu(z)``; finite for every finite ``z > 0``."""
    nu = _order(p)
    zz, scalar = _argument(z)
    out = np.empty_like(zz)
    pos = zz > 0.0
    out[~pos] = 1.0 if nu == 0.0 else (0.0 if nu > 0.0 else np.inf)
    if pos.any():
        mant, logf, _, _ = _ive_parts(nu, zz[pos])
        out[pos] = mant * np.exp(logf)
    if np.isinf(out).any():
        raise DomainError("I_nu(0) diverges for nu < 0")
    return _out(out, scalar)


def log_bessel_i_scaled(p, z):
    """``log(e^{-z} I_nu(z))`` for ``z > 0``."""
    nu = _order(p)
    zz, scalar = _argument(z)
    if np.any(zz == 0.0):
        raise DomainError("log of scaled Bessel requires z > 0")
    mant, logf, _, _ = _ive_parts(nu, zz)
    return _out(np.log(mant) + logf, scalar)


def bessel_i(p, z: float) -> EvalResult:
    """``I_nu(z)`` with an error estimate and the route that produced it."""
    nu = _order(p)
    zz, _ = _argument(z)
    if zz.size != 1:
        raise DomainError("bessel_i takes a scalar argument; use bessel_i_scaled for arrays")
    x = float(zz[0])
    if x == 0.0:
        if nu < 0.0:
            raise DomainError("I_nu(0) diverges for nu < 0")
        return EvalResult(1.0 if nu == 0.0 else 0.0, 0.0, Method.SERIES)
    mant, logf, rel, method = _ive_parts(nu, zz)
    log_value = math.log(mant[0]) + logf[0] + x
    if log_value > math.log(np.finfo(float).max) - 1.0:
        raise OverflowError(f"I_{nu}({x}) overflows; use bessel_i_scaled")
    value = float(mant[0] * math.exp(logf[0] + x))
    return EvalResult(value, float(rel[0] + EPS * abs(logf[0] + x)) * value, method[0])


def log_lambda_scaled(p, z):
    """``log(e^{-z} z^{-nu} I_nu(z))``, continuous down to ``z = 0``.

    This is the piece of the heat kernel left after the Gaussian factor
    ``exp(-(z-zeta)^2/4t)`` is split off, so it stays O(log z) for all z.
    """
    nu = _order(p)
    zz, scalar = _argument(z)
    out = np.empty_like(zz)
    half = _half_order(nu)
    if half == -1:
        # z^{1/2} I_{-1/2}(z) = sqrt(2/pi) cosh z
        out[:] = 0.5 * math.log(2.0 / math.pi) + np.log1p(np.exp(-2.0 * zz)) - math.log(2.0)
        return _out(out, scalar)
    if half == 1:
        # z^{-1/2} I_{1/2}(z) = sqrt(2/pi) sinh(z) / z
        small = zz < 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(zz > 0.0, np.sinh(np.where(small, zz, 0.5)) / np.where(zz > 0.0, zz, 1.0), 1.0)
            out[small] = 0.5 * math.log(2.0 / math.pi) + np.log(s[small]) - zz[small]
            zl = zz[~small]
            out[~small] = 0.5 * math.log(2.0 / math.pi) + np.log(-np.expm1(-2.0 * zl)) - math.log(2.0) - np.log(zl)
        return _out(out, scalar)
    base = -nu * math.log(2.0) - math.lgamma(nu + 1.0)
    zero = zz == 0.0
    out[zero] = base
    pos = np.flatnonzero(~zero)
    if pos.size:
        zp = zz[pos]
        mant, logf, _, method = _ive_parts(nu, zp)
        series = method == Method.SERIES
        if series.any():
            # redo the sum so z^{-nu} cancels analytically instead of numerically
            total, logscale, _ = _series(nu, zp[series])
            out[pos[series]] = base + np.log(total) + logscale - zp[series]
        rest = ~series
        out[pos[rest]] = np.log(mant[rest]) + logf[rest] - nu * np.log(zp[rest])
    return _out(out, scalar)


def log_lambda(p, z):
    """``log(z^{-nu} I_nu(z))``; equals ``-log(2^nu Gamma(nu+1))`` at ``z = 0``."""
    zz, scalar = _argument(z)
    return _out(log_lambda_scaled(p, zz) + zz, scalar)


# ---------------------------------------------------------------------------
# the Bessel quotient
# ---------------------------------------------------------------------------

def _continued_fraction(nu: float, z: np.ndarray) -> np.ndarray:
    """``I_{nu+1}/I_nu = 1/(b_1 + 1/(b_2 + ...))`` with ``b_k = 2(nu+k)/z`` (modified Lentz)."""
    tiny = 1e-300
    f = np.full(z.shape, tiny)
    c = f.copy()
    d = np.zeros_like(z)
    active = np.arange(z.size)
    maxit = int(10.0 * (float(np.max(z, initial=0.0)) + abs(nu))) + 500
    for k in range(1, maxit + 1):
        b = 2.0 * (nu + k) / z[active]
        dd = b + d[active]
        dd = np.where(dd == 0.0, tiny, dd)
        dd = 1.0 / dd
        cc = b + 1.0 / c[active]
        cc = np.where(cc == 0.0, tiny, cc)
        delta = cc * dd
        f[active] *= delta
        c[active] = cc
        d[active] = dd
        active = active[np.abs(delta - 1.0) >= EPS]
        if not active.size:
            return f
    raise ConvergenceError("continued fraction for the Bessel quotient did not converge")


_GL_X, _GL_W = np.polynomial.legendre.leggauss(64)


def _gauss_legendre(f, upper: np.ndarray) -> np.ndarray:
    """``int_0^upper f`` per column with a fixed 64-point rule; ``f`` maps (nodes, points) arrays."""
    x = 0.5 * upper[None, :] * (_GL_X[:, None] + 1.0)
    return 0.5 * upper * (_GL_W[:, None] * f(x)).sum(axis=0)


def _complement_integral(nu: float, z: np.ndarray) -> np.ndarray:
    """``1 - y_nu(z)`` from the Schlaefli integral of ``I_nu - I_{nu+1}``.

    ``cos(nu th) - cos((nu+1) th) = 2 sin((nu+1/2) th) sin(th/2)`` and
    ``sin((nu+1) pi) = -sin(nu pi)``, so neither integrand cancels near
    ``nu = -1/2``, where ``1 - y`` computed by subtraction loses all digits.
    """
    th_max = np.minimum(math.pi, 12.0 / np.sqrt(z))
    first = _gauss_legendre(
        lambda th: np.exp(z * (np.cos(th) - 1.0)) * np.sin((nu + 0.5) * th) * np.sin(0.5 * th), th_max)
    t_max = np.arccosh(1.0 + 40.0 / z)
    second = _gauss_legendre(
        lambda t: np.exp(-z * (1.0 + np.cosh(t)) - nu * t) * (1.0 + np.exp(-t)), t_max)
    diff = (2.0 * first - math.sin(nu * math.pi) * second) / math.pi
    mant, logf, _, _ = _ive_parts(nu, z)
    return diff / (mant * np.exp(logf))


def _quotient_parts(nu: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``(y, 1 - y)`` with the complement computed without cancellation where it matters."""
    y = np.zeros_like(z)
    c = np.ones_like(z)
    pos = z > 0.0
    if not pos.any():
        return y, c
    if _half_order(nu) == -1:
        e = np.exp(-2.0 * z[pos])
        y[pos] = np.tanh(z[pos])
        c[pos] = 2.0 * e / (1.0 + e)
        return y, c
    todo = pos.copy()
    # leading series terms; the continued fraction's 2(nu+k)/z overflows near subnormal z
    small = pos & (z < 1e-8)
    if small.any():
        zs = z[small]
        y[small] = zs / (2.0 * (nu + 1.0)) * (1.0 - zs * zs / (4.0 * (nu + 1.0) * (nu + 2.0)))
        c[small] = 1.0 - y[small]
        todo[small] = False
    big = pos & (z >= _HANKEL_FACTOR * max(1.0, (abs(nu) + 1.0) ** 2))
    if big.any():
        ib = np.flatnonzero(big)
        t0 = _hankel_terms(nu, z[ib])
        t1 = _hankel_terms(nu + 1.0, z[ib])
        idx, ok = _truncation_index(t0, t1)
        keep = np.arange(t0.shape[0])[:, None] <= idx[None, :]
        s0 = np.where(keep, t0, 0.0).sum(axis=0)
        s1 = np.where(keep, t1, 0.0).sum(axis=0)
        diff = np.where(keep, t0 - t1, 0.0).sum(axis=0)
        ib = ib[ok]
        y[ib] = s1[ok] / s0[ok]
        c[ib] = diff[ok] / s0[ok]
        todo[ib] = False
    if todo.any():
        it = np.flatnonzero(todo)
        y[it] = _continued_fraction(nu, z[it])
        c[it] = 1.0 - y[it]
        # close to nu = -1/2 the complement is tiny and the subtraction is pure noise
        if abs(nu + 0.5) < 0.25:
            ir = it[np.abs(c[it]) < 0.1]
            if ir.size:
                c[ir] = _complement_integral(nu, z[ir])
    return y, c


def bessel_quotient(p, z):
    """``y_nu(z) = I_{nu+1}(z) / I_nu(z)``, with ``y_nu(0) = 0``."""
    nu = _order(p)
    zz, scalar = _argument(z)
    return _out(_quotient_parts(nu, zz)[0], scalar)


def quotient_complement(p, z):
    """``1 - y_nu(z)``, accurate even when ``y_nu`` rounds to 1."""
    nu = _order(p)
    zz, scalar = _argument(z)
    return _out(_quotient_parts(nu, zz)[1], scalar)


def quotient_and_complement(p, z) -> tuple[np.ndarray, np.ndarray]:
    """Array form returning both ``y_nu`` and ``1 - y_nu``."""
    nu = _order(p)
    zz, _ = _argument(z)
    return _quotient_parts(nu, zz)


def log_quotient_complement(p, z):
    """``log(1 - y_nu(z))`` for ``nu >= -1/2``; representable long after ``1 - y`` underflows."""
    nu = _order(p)
    zz, scalar = _argument(z)
    if _half_order(nu) == -1:
        out = math.log(2.0) - 2.0 * zz - np.log1p(np.exp(-2.0 * zz))
        return _out(out, scalar)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log(_quotient_parts(nu, zz)[1])
    return _out(out, scalar)


def quotient_derivative(p, z):
    """``y'_nu(z)`` from the Riccati equation ``y' = 1 - y^2 - (2 nu + 1) y / z``.

    ``1 - y^2`` is taken as ``c (1 + y)`` with ``c = 1 - y``; at ``nu = -1/2``
    this is exactly ``sech^2``.  At ``z = 0`` the limit ``1/(2 nu + 2)`` is returned.
    """
    nu = _order(p)
    zz, scalar = _argument(z)
    y, c = _quotient_parts(nu, zz)
    out = np.full_like(zz, 1.0 / (2.0 * nu + 2.0))
    pos = zz > 0.0
    out[pos] = c[pos] * (1.0 + y[pos]) - (2.0 * nu + 1.0) * y[pos] / zz[pos]
    return _out(out, scalar)


def asymptotic_tail(p, z):
    """``z (1 - y_nu(z))``, which tends to ``(2 nu + 1)/2``.

    For ``z >= 100`` the distance to the limit is at most ``tail_constant(nu) / z``.
    """
    nu = _order(p)
    zz, scalar = _argument(z)
    if np.any(zz == 0.0):
        raise DomainError("asymptotic_tail requires z > 0")
    return _out(zz * _quotient_parts(nu, zz)[1], scalar)


def tail_constant(nu: float) -> float:
    """Constant ``C`` in ``|z(1 - y_nu) - (2nu+1)/2| <= C/z`` for ``z >= 100``.

    The expansion is ``z(1 - y) = (2nu+1)/2 + (1 - 4nu^2)/(8z) + O(z^-2)``;
    doubling the first-order coefficient and adding a small floor covers the
    second-order term once ``z >= 100``.
    """
    return abs(1.0 - 4.0 * nu * nu) / 4.0 + 0.01 * (1.0 + nu * nu) ** 2


def quotient_supremum(p, zmax: float = 200.0) -> tuple[float, float]:
    """Location and value of ``max y_nu`` for ``-1 < nu < -1/2`` (golden-section search)."""
    nu = _order(p)
    if not nu < -0.5:
        raise DomainError("the quotient has an interior maximum only for -1 < nu < -1/2")
    grid = np.geomspace(1e-2, zmax, 400)
    vals = bessel_quotient(nu, grid)
    i = int(np.argmax(vals))
    if i == 0 or i == grid.size - 1:
        raise ConvergenceError("maximum of the quotient not bracketed")
    zstar = golden(lambda x: -bessel_quotient(nu, x), brack=(grid[i - 1], grid[i], grid[i + 1]), tol=1e-10)
    return float(zstar), float(bessel_quotient(nu, zstar))


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------

def recurrence_residuals(p, z: float) -> tuple[float, float]:
    """Residuals of ``I'_{nu+1}/I_nu = 1 - (nu+1) y/z`` and ``I'_nu/I_nu = y + nu/z``.

    Derivatives come from the differentiated series, the right-hand sides from
    the continued-fraction quotient.  Each residual is scaled by the size of
    the terms on its right-hand side, since the second identity can vanish.
    """
    nu = _order(p)
    zz = np.array([float(z)])
    if not zz[0] > 0.0:
        raise DomainError("recurrence check requires z > 0")
    y = float(bessel_quotient(nu, zz[0]))
    i_nu = bessel_i(nu, zz[0]).value
    d_next = float(_series_derivative(nu + 1.0, zz)[0])
    d_self = float(_series_derivative(nu, zz)[0])
    x = float(zz[0])
    r1 = abs(d_next / i_nu - (1.0 - (nu + 1.0) * y / x)) / (1.0 + (nu + 1.0) * y / x)
    r2 = abs(d_self / i_nu - (y + nu / x)) / (abs(y) + abs(nu) / x)
    return r1, r2


def connection_check(p, z: float, spec=None) -> float:
    """Relative residual of ``I_nu(z) = (z/2)^nu / Gamma(nu+1) * exp(int_0^z y_nu)``."""
    from .quadrature import QuadratureSpec, integrate_interval

    nu = _order(p)
    if not z > 0.0:
        raise DomainError("connection check requires z > 0")
    spec = spec or QuadratureSpec(rel_tol=1e-13, abs_tol=1e-300)
    integral = integrate_interval(lambda s: bessel_quotient(nu, s), 0.0, float(z), spec).value
    lhs = float(log_bessel_i_scaled(nu, z)) + z
    rhs = nu * math.log(0.5 * z) - math.lgamma(nu + 1.0) + integral
    return abs(math.expm1(rhs - lhs))


def poisson_check(p, z: float, nodes: int = 64) -> float:
    """Relative residual of the Poisson integral representation (``nu > -1/2``).

    ``I_nu(z) = (z/2)^nu / (sqrt(pi) Gamma(nu+1/2)) int_{-1}^{1} e^{zt} (1-t^2)^{nu-1/2} dt``,
    integrated by Gauss-Jacobi with weight exponents ``nu - 1/2`` at both ends.
    """
    nu = _order(p)
    if not nu > -0.5:
        raise DomainError("Poisson representation needs nu > -1/2")
    if not z > 0.0:
        raise DomainError("Poisson check requires z > 0")
    x, w = roots_jacobi(nodes, nu - 0.5, nu - 0.5)
    scaled = float(np.sum(w * np.exp(z * (x - 1.0))))
    log_rhs = nu * math.log(0.5 * z) - 0.5 * math.log(math.pi) - math.lgamma(nu + 0.5) + math.log(scaled)
    return abs(math.expm1(log_rhs - float(log_bessel_i_scaled(nu, z))))


def nasell_residual(z):
    """``|y_{-1/2}^2 - 1 + (4/(e^{2z}+1)) (1 - 1/(e^{2z}+1))|``."""
    zz, scalar = _argument(z)
    y = _quotient_parts(-0.5, zz)[0]
    e = np.exp(-2.0 * zz)
    s = e / (1.0 + e)  # 1/(e^{2z}+1) without overflow
    return _out(np.abs(y * y - 1.0 + 4.0 * s * (1.0 - s)), scalar)
