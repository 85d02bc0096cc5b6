"""The model Kimura operator ``L_b = x d^2/dx^2 + b d/dx`` and its kernel,
and their exact correspondence with the Bessel problem under
``x = z^2/4``, ``b = (a+1)/2``.

Polynomials in ``(x, t)`` are passed as 2-d coefficient arrays ``V[i, j]``
multiplying ``x^i t^j`` (numpy ``polyval2d`` convention).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainError
from .kernels import log_heat_kernel
from .special_fn import log_bessel_i_scaled


@dataclass(frozen=True)
class KimuraParam:
    b: float

    def __post_init__(self) -> None:
        if not self.b > 0.0:
            raise DomainError(f"b must be positive, got {self.b}")

    @property
    def induced_a(self) -> float:
        return 2.0 * self.b - 1.0

    @classmethod
    def from_a(cls, a: float) -> KimuraParam:
        return cls(0.5 * (float(a) + 1.0))


def _check_xyt(x, y, t) -> None:
    if not (x > 0.0 and y > 0.0 and t > 0.0) or not all(map(math.isfinite, (x, y, t))):
        raise DomainError("need x, y, t > 0 and finite")


def log_kimura_kernel(b, x: float, y: float, t: float) -> float:
    """``log k_b`` through the Bessel kernel: ``k_b(x, y, t) = 2 p(z, zeta, t) zeta^(a-1)``
    with ``z = 2 sqrt(x)``, ``zeta = 2 sqrt(y)``, ``a = 2b - 1``.
    """
    b = b.b if isinstance(b, KimuraParam) else KimuraParam(float(b)).b
    x, y, t = float(x), float(y), float(t)
    _check_xyt(x, y, t)
    a = 2.0 * b - 1.0
    zeta = 2.0 * math.sqrt(y)
    return math.log(2.0) + float(log_heat_kernel(a, 2.0 * math.sqrt(x), zeta, t)) + (a - 1.0) * math.log(zeta)


def kimura_kernel(b, x: float, y: float, t: float) -> float:
    """``k_b(x, y, t) = (1/t) (x/y)^((1-b)/2) e^{-(x+y)/t} I_{b-1}(2 sqrt(xy)/t)``."""
    return math.exp(log_kimura_kernel(b, x, y, t))


def log_kimura_kernel_direct(b, x: float, y: float, t: float) -> float:
    """``log k_b`` from its own formula with the exponentially scaled ``I_{b-1}``;
    the exponents combine to ``-(sqrt x - sqrt y)^2 / t``.
    """
    b = b.b if isinstance(b, KimuraParam) else KimuraParam(float(b)).b
    x, y, t = float(x), float(y), float(t)
    _check_xyt(x, y, t)
    rx, ry = math.sqrt(x), math.sqrt(y)
    w = 2.0 * rx * ry / t
    return (-math.log(t) + 0.5 * (1.0 - b) * (math.log(x) - math.log(y))
            - (rx - ry) ** 2 / t + float(log_bessel_i_scaled(b - 1.0, w)))


def equivalence_residual(a: float, z: float, zeta: float, t: float) -> float:
    """Relative gap in ``(zeta/2) k_{(a+1)/2}(z^2/4, zeta^2/4, t) = p^(a)(z, zeta, t) zeta^a``,
    with the Kimura side evaluated directly.
    """
    a = float(a)
    if not a > -1.0:
        raise DomainError("a must exceed -1")
    if not (z > 0.0 and zeta > 0.0 and t > 0.0):
        raise DomainError("need z, zeta, t > 0")
    b = 0.5 * (a + 1.0)
    lhs = math.log(0.5 * zeta) + log_kimura_kernel_direct(b, 0.25 * z * z, 0.25 * zeta * zeta, t)
    rhs = float(log_heat_kernel(a, z, zeta, t)) + a * math.log(zeta)
    return abs(math.expm1(lhs - rhs))


def _as_poly(v) -> np.ndarray:
    V = np.atleast_2d(np.asarray(v, dtype=float))
    if V.ndim != 2:
        raise DomainError("polynomial must be a 2-d coefficient array V[i, j] for x^i t^j")
    return V


def pullback(v) -> np.ndarray:
    """Coefficients ``U[k, j]`` of ``u(z, t) = v(z^2/4, t)`` in ``z^k t^j``."""
    V = _as_poly(v)
    U = np.zeros((2 * V.shape[0] - 1, V.shape[1]))
    U[::2] = V / 4.0 ** np.arange(V.shape[0])[:, None]
    return U


def _bessel_apply(a: float, U: np.ndarray) -> np.ndarray:
    """``U -> u_zz + (a/z) u_z`` on coefficients; exact because ``u`` is even in ``z``."""
    uz = P.polyder(U, axis=0)
    uzz = P.polyder(U, m=2, axis=0)
    if np.any(uz[0::2] != 0.0):
        raise DomainError("u must be even in z")
    # u_z / z: drop the vanishing constant row and shift down
    uz_over_z = uz[1:]
    out = np.zeros((max(uzz.shape[0], uz_over_z.shape[0]), U.shape[1]))
    out[:uzz.shape[0]] += uzz
    out[:uz_over_z.shape[0]] += a * uz_over_z
    return out


def _kimura_apply(b: float, V: np.ndarray) -> np.ndarray:
    """``V -> x v_xx + b v_x`` on coefficients."""
    vx = P.polyder(V, axis=0)
    vxx = P.polyder(V, m=2, axis=0)
    out = np.zeros(V.shape)
    out[:vx.shape[0]] += b * vx
    out[1:vxx.shape[0] + 1] += vxx  # multiplying by x shifts up one power
    return out


def intertwine_residual(a: float, v, z: float, t: float) -> float:
    """``|(u_t - B u)(z, t) - (v_t - L_b v)(z^2/4, t)|`` for ``u = v(z^2/4, .)``,
    relative to the size of the terms involved.
    """
    a = float(a)
    if not a > -1.0:
        raise DomainError("a must exceed -1")
    b = 0.5 * (a + 1.0)
    V = _as_poly(v)
    U = pullback(V)
    x = 0.25 * z * z
    lhs_t = P.polyval2d(z, t, P.polyder(U, axis=1)) if U.shape[1] > 1 else 0.0
    lhs_b = P.polyval2d(z, t, _bessel_apply(a, U))
    rhs_t = P.polyval2d(x, t, P.polyder(V, axis=1)) if V.shape[1] > 1 else 0.0
    rhs_l = P.polyval2d(x, t, _kimura_apply(b, V))
    scale = max(1.0, abs(lhs_t), abs(lhs_b), abs(rhs_t), abs(rhs_l))
    return abs((lhs_t - lhs_b) - (rhs_t - rhs_l)) / scale


def flux_map_residual(a: float, v, z: float, t: float) -> float:
    """Relative gap in ``z^a u_z(z, t) = 2^(2b-1) x^b v_x(x, t)``."""
    a = float(a)
    if not a > -1.0:
        raise DomainError("a must exceed -1")
    if not z > 0.0:
        raise DomainError("z must be positive")
    b = 0.5 * (a + 1.0)
    V = _as_poly(v)
    x = 0.25 * z * z
    lhs = z ** a * P.polyval2d(z, t, P.polyder(pullback(V), axis=0))
    rhs = 2.0 ** (2.0 * b - 1.0) * x ** b * P.polyval2d(x, t, P.polyder(V, axis=0))
    return abs(lhs - rhs) / max(1e-300, abs(lhs), abs(rhs))


def caloric_pullback_residual(a: float, x: float, t: float) -> float:
    """``v = 4x + 2(a+1)t`` (the image of ``zeta^2 + 2(a+1)t``) solves ``v_t = L_b v``."""
    a = float(a)
    V = np.array([[0.0, 2.0 * (a + 1.0)], [4.0, 0.0]])
    b = 0.5 * (a + 1.0)
    return abs(P.polyval2d(x, t, P.polyder(V, axis=1)) - P.polyval2d(x, t, _kimura_apply(b, V)))
