"""The Bessel heat kernel on the half-line with weight ``z**a``, its
log-derivatives, the Li-Yau gap, and the product kernel of the extension
problem on ``R^n x (0, inf)``.

The kernel is

    p(z, zeta, t) = (1/2t) (z zeta)^{(1-a)/2} I_nu(z zeta / 2t) exp(-(z^2 + zeta^2)/4t),

with ``nu = (a-1)/2``.  It is always assembled in log form as
``-(a+1)/2 log(2t) - (z-zeta)^2/4t + log(e^{-w} Lambda_nu(w))`` with
``w = z zeta / 2t``, so neither the Bessel factor nor the Gaussian can
overflow, and the result is bitwise symmetric in ``z`` and ``zeta``.
All functions broadcast over numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special_fn import log_lambda_scaled, log_quotient_complement, quotient_and_complement


@dataclass(frozen=True)
class KernelPoint:
    z: float
    zeta: float
    t: float

    def __post_init__(self) -> None:
        _check(self.z, self.zeta, self.t)


@dataclass(frozen=True)
class ExtensionPoint:
    x: tuple[float, ...]
    z: float
    y: tuple[float, ...]
    zeta: float
    t: float

    def __post_init__(self) -> None:
        if len(self.x) != len(self.y) or len(self.x) < 1:
            raise DomainError("x and y must have the same dimension n >= 1")
        _check(self.z, self.zeta, self.t)


def _check(z, zeta, t) -> None:
    if np.any(np.asarray(t) <= 0.0) or not np.all(np.isfinite(t)):
        raise DomainError("t must be positive and finite")
    for v in (z, zeta):
        arr = np.asarray(v)
        if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
            raise DomainError("spatial arguments must be finite and nonnegative")


def _check_a(a: float) -> float:
    a = float(a)
    if not a > -1.0:
        raise DomainError(f"a must exceed -1, got {a}")
    return a


def _prepare(a, z, zeta, t):
    a = _check_a(a)
    _check(z, zeta, t)
    zb, zetab, tb = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (z, zeta, t)))
    scalar = zb.ndim == 0
    return a, np.atleast_1d(zb), np.atleast_1d(zetab), np.atleast_1d(tb), scalar


def _ret(arr: np.ndarray, scalar: bool):
    return float(arr.reshape(-1)[0]) if scalar else arr


def log_heat_kernel(a, z, zeta, t):
    """``log p^(a)(z, zeta, t)``."""
    a, z, zeta, t, scalar = _prepare(a, z, zeta, t)
    nu = 0.5 * (a - 1.0)
    w = z * zeta / (2.0 * t)
    d = z - zeta
    core = log_lambda_scaled(nu, w.ravel()).reshape(w.shape)
    # at z*zeta = 0 the core is -log(2^nu Gamma(nu+1)), the boundary formula
    return _ret(-0.5 * (a + 1.0) * np.log(2.0 * t) - d * d / (4.0 * t) + core, scalar)


def heat_kernel(a, z, zeta, t):
    """``p^(a)(z, zeta, t)``; strictly positive wherever it is representable."""
    return np.exp(log_heat_kernel(a, z, zeta, t))


def boundary_kernel(a, zeta, t):
    """``p^(a)(0, zeta, t) = t^{-(a+1)/2} e^{-zeta^2/4t} / (2^a Gamma((a+1)/2))``."""
    a = _check_a(a)
    zeta, t = np.asarray(zeta, dtype=float), np.asarray(t, dtype=float)
    return np.exp(-0.5 * (a + 1.0) * np.log(t) - zeta * zeta / (4.0 * t)
                  - a * math.log(2.0) - math.lgamma(0.5 * (a + 1.0)))


def log_heat_kernel_reflection(z, zeta, t):
    """Log of ``(4 pi t)^{-1/2} (e^{-(z-zeta)^2/4t} + e^{-(z+zeta)^2/4t})``."""
    _check(z, zeta, t)
    z, zeta, t = (np.asarray(v, dtype=float) for v in (z, zeta, t))
    d = z - zeta
    return -0.5 * np.log(4.0 * math.pi * t) - d * d / (4.0 * t) + np.log1p(np.exp(-z * zeta / t))


def heat_kernel_reflection(z, zeta, t):
    """The ``a = 0`` kernel as the even reflection of the Gaussian on the line."""
    return np.exp(log_heat_kernel_reflection(z, zeta, t))


def _quotient(a, w):
    y, c = quotient_and_complement(0.5 * (a - 1.0), w.ravel())
    return y.reshape(w.shape), c.reshape(w.shape)


def log_grad_z(a, z, zeta, t):
    """``d/dz log p = y_nu(z zeta / 2t) zeta / 2t - z / 2t``; zero at ``z = 0``."""
    a, z, zeta, t, scalar = _prepare(a, z, zeta, t)
    y, _ = _quotient(a, z * zeta / (2.0 * t))
    return _ret((y * zeta - z) / (2.0 * t), scalar)


def log_grad_zeta(a, z, zeta, t):
    """``d/dzeta log p``, the mirror image of :func:`log_grad_z`."""
    return log_grad_z(a, zeta, z, t)


def log_deriv_t(a, z, zeta, t):
    """``d/dt log p = -(a+1)/2t - y z zeta / 2t^2 + (z^2 + zeta^2)/4t^2``."""
    a, z, zeta, t, scalar = _prepare(a, z, zeta, t)
    y, _ = _quotient(a, z * zeta / (2.0 * t))
    out = -(a + 1.0) / (2.0 * t) - y * z * zeta / (2.0 * t * t) + (z * z + zeta * zeta) / (4.0 * t * t)
    return _ret(out, scalar)


def log_derivatives(a, z, zeta, t):
    """``(d/dz log p, d/dt log p, zeta^2/4t^2 (y^2 - 1))`` sharing one quotient evaluation."""
    a, z, zeta, t, scalar = _prepare(a, z, zeta, t)
    y, c = _quotient(a, z * zeta / (2.0 * t))
    gz = (y * zeta - z) / (2.0 * t)
    gt = -(a + 1.0) / (2.0 * t) - y * z * zeta / (2.0 * t * t) + (z * z + zeta * zeta) / (4.0 * t * t)
    # y^2 - 1 = -c (1 + y) keeps the sign exact where y rounds to 1
    rem = -zeta * zeta / (4.0 * t * t) * c * (1.0 + y)
    return _ret(gz, scalar), _ret(gt, scalar), _ret(rem, scalar)


@dataclass(frozen=True)
class LiYauGap:
    """Both evaluations of ``(d_z log p)^2 - d_t log p`` and the bound ``(a+1)/2t``.

    ``log_margin`` is the log of ``bound - gap``, i.e. of
    ``zeta^2/4t^2 (1 - y^2)``; it stays finite where the margin itself
    underflows.  It is ``-inf`` when the margin vanishes (``zeta = 0``).
    """

    formula: float
    derivatives: float
    bound: float
    log_margin: float
    scale: float

    @property
    def agreement(self) -> float:
        """Route disagreement relative to the size of the terms being combined."""
        return abs(self.formula - self.derivatives) / self.scale


def liyau_gap(a, z: float, zeta: float, t: float) -> LiYauGap:
    a = _check_a(a)
    _check(z, zeta, t)
    z, zeta, t = float(z), float(zeta), float(t)
    nu = 0.5 * (a - 1.0)
    w = z * zeta / (2.0 * t)
    y, c = quotient_and_complement(nu, np.array([w]))
    y, c = float(y[0]), float(c[0])
    bound = (a + 1.0) / (2.0 * t)
    q = zeta * zeta / (4.0 * t * t)
    formula = bound - q * c * (1.0 + y)
    gz = log_grad_z(a, z, zeta, t)
    gt = log_deriv_t(a, z, zeta, t)
    derivatives = gz * gz - gt
    if zeta == 0.0:
        log_margin = -math.inf
    elif nu >= -0.5:
        log_q = 2.0 * math.log(zeta) - math.log(4.0) - 2.0 * math.log(t)  # q itself may underflow
        log_margin = log_q + float(log_quotient_complement(nu, w)) + math.log1p(y)
    else:
        m = q * c * (1.0 + y)
        log_margin = math.log(m) if m > 0.0 else -math.inf
    scale = bound + (z * z + zeta * zeta) / (4.0 * t * t) + abs(formula)
    return LiYauGap(formula, derivatives, bound, log_margin, scale)


def gaussian_kernel(x, y, t):
    """The Gauss-Weierstrass kernel ``(4 pi t)^{-n/2} e^{-|x-y|^2/4t}`` on ``R^n``."""
    x, y = np.atleast_1d(np.asarray(x, dtype=float)), np.atleast_1d(np.asarray(y, dtype=float))
    n = x.shape[-1]
    d2 = np.sum((x - y) ** 2, axis=-1)
    return np.exp(-0.5 * n * math.log(4.0 * math.pi * t) - d2 / (4.0 * t))


def extension_kernel(a, x, z, y, zeta, t):
    """``G_a(X, Y, t) = (Gaussian on R^n)(x, y, t) * p^(a)(z, zeta, t)``."""
    pt = ExtensionPoint(tuple(np.atleast_1d(x).tolist()), float(z),
                        tuple(np.atleast_1d(y).tolist()), float(zeta), float(t))
    return float(gaussian_kernel(pt.x, pt.y, pt.t)) * float(heat_kernel(a, pt.z, pt.zeta, pt.t))


def kernel_window(z: float, t: float) -> tuple[float, float]:
    """Center and Gaussian width of ``zeta -> p(z, zeta, t)`` for the integrator."""
    return float(z), math.sqrt(2.0 * t)


def stochastic_completeness(a, z: float, t: float, spec=None) -> float:
    """``int_0^inf p^(a)(z, zeta, t) zeta^a d zeta`` (equals 1)."""
    from .quadrature import integrate_weighted

    center, width = kernel_window(z, t)
    return integrate_weighted(lambda s: heat_kernel(a, z, s, t), a, spec, center=center, width=width).value


def chapman_kolmogorov_residual(a, z: float, eta: float, s: float, t: float, spec=None) -> float:
    """Relative residual of ``int p(z, zeta, t) p(zeta, eta, s) zeta^a d zeta = p(z, eta, t + s)``."""
    from .quadrature import QuadratureSpec, integrate_weighted

    spec = spec or QuadratureSpec(rel_tol=1e-12, abs_tol=1e-300)
    # product of the two Gaussians in zeta: precision 1/4t + 1/4s
    center = (z * s + eta * t) / (t + s)
    width = math.sqrt(2.0 * t * s / (t + s))
    target = float(log_heat_kernel(a, z, eta, t + s))

    def f(x):
        return np.exp(log_heat_kernel(a, z, x, t) + log_heat_kernel(a, x, eta, s) - target)

    value = integrate_weighted(f, a, spec, center=center, width=width).value
    return abs(value - 1.0)


def reflection_residual(z, zeta, t):
    """Relative gap between the ``a = 0`` kernel and its reflection closed form."""
    return np.abs(np.expm1(np.asarray(log_heat_kernel(0.0, z, zeta, t))
                           - log_heat_kernel_reflection(z, zeta, t)))
