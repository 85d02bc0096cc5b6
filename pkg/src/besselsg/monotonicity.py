"""Struwe energy, height, Dirichlet integral and frequency of caloric fields
for the Bessel operator ``B = d^2/dzeta^2 + (a/zeta) d/dzeta``, with
numerical monotonicity scans.

All functionals are integrals against the backward kernel
``p^(a)(z, zeta, T - t)`` centered at ``(z, T)``:

    E(t) = (T-t)/2 int u_zeta^2 p zeta^a
    L(t) = 1/2 int u^2 p zeta^a
    H(r) = L(-r^2) with T = 0,   I(r) = r^2/2 int u_zeta(., -r^2)^2 p zeta^a,   N = I / H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, UndefinedFrequency, UnsupportedKappa
from .kernels import log_grad_zeta, log_heat_kernel
from .quadrature import QuadratureSpec, integrate_weighted_many
from .report import CaseRow, VerificationReport
from .semigroup import InitialDatum, evaluate
from .special_fn import quotient_derivative

FieldFn = Callable[[np.ndarray, float], np.ndarray]

_DEFAULT = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-300, tail_sigma=14.0)
_PDE_TOL = 1e-8
_NEUMANN_TOL = 1e-4


class Family(Enum):
    CONSTANT = "constant"
    HOMOGENEOUS2 = "homogeneous2"
    HOMOGENEOUS4 = "homogeneous4"
    SEMIGROUP_SHIFTED = "semigroup-shifted"
    COMBINATION = "combination"


@dataclass(frozen=True)
class CaloricField:
    """A solution of ``u_t = B u`` on ``(0, inf) x (t_min, inf)`` with its derivatives.

    The callables take an array of ``zeta`` and a scalar ``t``.
    """

    a: float
    u: FieldFn
    du_dzeta: FieldFn
    du_dt: FieldFn
    family: Family
    kappa: int | None = None
    t_min: float = -math.inf
    neumann_ok: bool = True

    def _t(self, t: float) -> float:
        if not t > self.t_min:
            raise DomainError(f"field is defined only for t > {self.t_min}")
        return float(t)

    def values(self, zeta, t: float) -> np.ndarray:
        return np.asarray(self.u(np.asarray(zeta, dtype=float), self._t(t)), dtype=float)

    def grad(self, zeta, t: float) -> np.ndarray:
        return np.asarray(self.du_dzeta(np.asarray(zeta, dtype=float), self._t(t)), dtype=float)

    def time_derivative(self, zeta, t: float) -> np.ndarray:
        return np.asarray(self.du_dt(np.asarray(zeta, dtype=float), self._t(t)), dtype=float)

    def pde_residual(self, zeta: Sequence[float], times: Sequence[float]) -> float:
        """Largest ``|u_t - u_zz - (a/zeta) u_z|`` over the grid; ``u_zz`` by a
        5-point stencil on ``du_dzeta``.
        """
        worst = 0.0
        z = np.asarray(zeta, dtype=float)
        h = 1e-3 * np.maximum(1.0, z)
        for t in times:
            g = [self.grad(z + k * h, t) for k in (-2, -1, 1, 2)]
            uzz = (g[0] - 8.0 * g[1] + 8.0 * g[2] - g[3]) / (12.0 * h)
            res = self.time_derivative(z, t) - uzz - self.a / z * self.grad(z, t)
            worst = max(worst, float(np.max(np.abs(res))))
        return worst

    def neumann_sample_point(self) -> float:
        """``1e-6``, moved closer to 0 when ``zeta^(a+1)`` is still large there
        (``a`` near -1), so that a regular ``u_zeta = O(zeta)`` passes.
        """
        return min(1e-6, 1e-8 ** (1.0 / (1.0 + self.a)))

    def neumann_residual(self, t: float) -> float:
        s = self.neumann_sample_point()
        return abs(s ** self.a * float(self.grad(np.array([s]), t)[0]))


def _check_field(f: CaloricField, times: Sequence[float]) -> CaloricField:
    grid = np.array([0.25, 0.5, 1.0, 2.0, 3.0])
    r = f.pde_residual(grid, times)
    if r > _PDE_TOL:
        raise DomainError(f"field fails the heat equation: residual {r:.3g}")
    if max(f.neumann_residual(t) for t in times) > _NEUMANN_TOL:
        raise DomainError("field fails the Neumann condition")
    return f


def homogeneous_solution(a: float, kappa: int) -> CaloricField:
    """Polynomial solutions with ``Z u = kappa u`` (``Z = zeta d_zeta + 2t d_t``).

    ``kappa = 0``: 1; ``2``: ``zeta^2 + 2(a+1)t``;
    ``4``: ``zeta^4 + 4(a+3) t zeta^2 + 4(a+3)(a+1) t^2``.
    """
    a = float(a)
    if not a > -1.0:
        raise DomainError("a must exceed -1")
    if kappa == 0:
        f = CaloricField(a, lambda s, t: np.ones_like(s), lambda s, t: np.zeros_like(s),
                         lambda s, t: np.zeros_like(s), Family.CONSTANT, 0)
    elif kappa == 2:
        d = 2.0 * (a + 1.0)
        f = CaloricField(a, lambda s, t: s * s + d * t, lambda s, t: 2.0 * s,
                         lambda s, t: np.full_like(s, d), Family.HOMOGENEOUS2, 2)
    elif kappa == 4:
        c1, c2 = 4.0 * (a + 3.0), 4.0 * (a + 3.0) * (a + 1.0)
        f = CaloricField(a, lambda s, t: s ** 4 + c1 * t * s * s + c2 * t * t,
                         lambda s, t: 4.0 * s ** 3 + 2.0 * c1 * t * s,
                         lambda s, t: c1 * s * s + 2.0 * c2 * t, Family.HOMOGENEOUS4, 4)
    else:
        raise UnsupportedKappa(f"kappa must be one of 0, 2, 4, got {kappa!r}")
    return _check_field(f, (-1.0, 0.5, 2.0))


def combination(fields: Sequence[CaloricField], weights: Sequence[float]) -> CaloricField:
    """``sum_k w_k u_k`` for fields sharing the same ``a``."""
    if not fields or len(fields) != len(weights):
        raise DomainError("need matching nonempty fields and weights")
    a = fields[0].a
    if any(f.a != a for f in fields):
        raise DomainError("fields must share a")
    pairs = list(zip(weights, fields))

    def lin(attr):
        return lambda s, t: sum(w * getattr(f, attr)(s, t) for w, f in pairs)

    return CaloricField(a, lin("u"), lin("du_dzeta"), lin("du_dt"), Family.COMBINATION, None,
                        max(f.t_min for f in fields))


def semigroup_shifted(a: float, phi: InitialDatum, t0: float, spec: QuadratureSpec | None = None) -> CaloricField:
    """``u(zeta, t) = P_{t+t0} phi(zeta)``, defined for ``t > -t0``."""
    if not t0 > 0.0:
        raise DomainError("t0 must be positive")
    spec = spec or QuadratureSpec(rel_tol=1e-13, abs_tol=1e-300)

    memo: dict = {}

    def parts(s, t):
        # the integrands ask for u, u_zeta and u_t on the same nodes in turn
        s = np.atleast_1d(np.asarray(s, dtype=float))
        key = (t, s.tobytes())
        if key not in memo:
            memo.clear()
            memo[key] = [evaluate(a, phi, float(x), t + t0, spec) for x in s]
        return memo[key]

    f = CaloricField(
        float(a),
        lambda s, t: np.array([v.u for v in parts(s, t)]),
        lambda s, t: np.array([v.u * v.dlog_z for v in parts(s, t)]),
        lambda s, t: np.array([v.u * v.dlog_t for v in parts(s, t)]),
        Family.SEMIGROUP_SHIFTED, None, -t0)
    return _check_field(f, (0.0,))


def _integrate(a: float, z: float, tau: float, f, spec: QuadratureSpec | None):
    spec = spec or _DEFAULT
    return integrate_weighted_many(f, a, spec, center=z, width=math.sqrt(2.0 * tau))


def _kernel(a, z, s, tau):
    return np.exp(log_heat_kernel(a, z, s, tau))


def _energy(a, u: CaloricField, z, T, t, spec):
    tau = T - t
    r = _integrate(a, z, tau, lambda s: u.grad(s, t) ** 2 * _kernel(a, z, s, tau), spec)
    return 0.5 * tau * float(r.value[0]), 0.5 * tau * float(r.error_estimate[0])


def _times(T: float, t: float) -> float:
    if not t < T:
        raise DomainError("need t < T")
    return T - t


def energy(a, u: CaloricField, z: float, T: float, t: float, spec: QuadratureSpec | None = None) -> float:
    """``E(t) = (T-t)/2 int u_zeta(zeta, t)^2 p(z, zeta, T-t) zeta^a d zeta``."""
    _times(T, t)
    return _energy(float(a), u, float(z), T, t, spec)[0]


@dataclass(frozen=True)
class EnergyDerivative:
    total: float
    dissipation: float
    gterm: float


def energy_derivative(a, u: CaloricField, z: float, T: float, t: float,
                      spec: QuadratureSpec | None = None) -> EnergyDerivative:
    """``dE/dt`` split into the nonpositive dissipation and the curvature term.

    ``dissipation = -(T-t) int (u_t + u_zeta p_zeta/p)^2 p zeta^a`` and
    ``gterm = -(T-t) int u_zeta^2 y'(z zeta/2(T-t)) z^2/4(T-t)^2 p zeta^a``,
    identically 0 at ``z = 0``.
    """
    a, z = float(a), float(z)
    tau = _times(T, t)
    nu = 0.5 * (a - 1.0)

    def f(s):
        p = _kernel(a, z, s, tau)
        uz = u.grad(s, t)
        drift = u.time_derivative(s, t) + uz * log_grad_zeta(a, z, s, tau)
        out = [drift * drift * p]
        if z > 0.0:
            yp = quotient_derivative(nu, z * s / (2.0 * tau))
            out.append(uz * uz * yp * p)
        return np.stack(out)

    r = _integrate(a, z, tau, f, spec)
    dissipation = -tau * float(r.value[0])
    gterm = -tau * z * z / (4.0 * tau * tau) * float(r.value[1]) if z > 0.0 else 0.0
    return EnergyDerivative(dissipation + gterm, dissipation, gterm)


def energy_derivative_fd(a, u: CaloricField, z: float, T: float, t: float,
                         spec: QuadratureSpec | None = None) -> float:
    """Central difference of :func:`energy` in ``t`` with step ``1e-4 (T-t)``."""
    h = 1e-4 * _times(T, t)
    return (energy(a, u, z, T, t + h, spec) - energy(a, u, z, T, t - h, spec)) / (2.0 * h)


def bracket(a, z: float, zeta: float, T: float, t: float) -> tuple[float, float]:
    """``d_zeta (p_zeta/p) + 1/2(T-t)`` two ways: a central difference of the
    exact first log-derivative, and ``y'(w) z^2/4(T-t)^2``.
    """
    a = float(a)
    tau = _times(T, t)
    h = 1e-5 * max(1.0, zeta)
    lo = max(zeta - h, 0.0)
    fd = (log_grad_zeta(a, z, zeta + h, tau) - log_grad_zeta(a, z, lo, tau)) / (zeta + h - lo) + 0.5 / tau
    closed = float(quotient_derivative(0.5 * (a - 1.0), z * zeta / (2.0 * tau))) * z * z / (4.0 * tau * tau)
    return fd, closed


def lfunctional(a, u: CaloricField, z: float, T: float, t: float, spec: QuadratureSpec | None = None) -> float:
    """``L(t) = 1/2 int u^2 p(z, zeta, T-t) zeta^a``."""
    tau = _times(T, t)
    r = _integrate(float(a), float(z), tau, lambda s: u.values(s, t) ** 2 * _kernel(a, z, s, tau), spec)
    return 0.5 * float(r.value[0])


def lderivative_check(a, u: CaloricField, z: float, T: float, t: float,
                      spec: QuadratureSpec | None = None) -> float:
    """Max of ``|dL/dt - int u (u_t + u_zeta p_zeta/p) p|`` (finite difference
    on the left) and ``|E + (T-t)/2 int u (u_t + u_zeta p_zeta/p) p|``.
    """
    a, z = float(a), float(z)
    tau = _times(T, t)

    def f(s):
        p = _kernel(a, z, s, tau)
        return u.values(s, t) * (u.time_derivative(s, t) + u.grad(s, t) * log_grad_zeta(a, z, s, tau)) * p

    j = float(_integrate(a, z, tau, f, spec).value[0])
    h = 1e-4 * tau
    dl = (lfunctional(a, u, z, T, t + h, spec) - lfunctional(a, u, z, T, t - h, spec)) / (2.0 * h)
    e = energy(a, u, z, T, t, spec)
    return max(abs(dl - j), abs(e + 0.5 * tau * j))


def _height_dirichlet(a, u: CaloricField, z: float, r: float, spec):
    if not r > 0.0:
        raise DomainError("r must be positive")
    a, z, t, tau = float(a), float(z), -r * r, r * r

    def f(s):
        p = _kernel(a, z, s, tau)
        return np.stack([u.values(s, t) ** 2 * p, u.grad(s, t) ** 2 * p])

    res = _integrate(a, z, tau, f, spec)
    return 0.5 * float(res.value[0]), 0.5 * tau * float(res.value[1])


def height(a, u: CaloricField, z: float, r: float, spec: QuadratureSpec | None = None) -> float:
    """``H_z(r) = 1/2 int u(zeta, -r^2)^2 p(z, zeta, r^2) zeta^a``."""
    return _height_dirichlet(a, u, z, r, spec)[0]


def dirichlet(a, u: CaloricField, z: float, r: float, spec: QuadratureSpec | None = None) -> float:
    """``I_z(r) = r^2/2 int u_zeta(zeta, -r^2)^2 p(z, zeta, r^2) zeta^a``."""
    return _height_dirichlet(a, u, z, r, spec)[1]


def frequency(a, u: CaloricField, z: float, r: float, spec: QuadratureSpec | None = None) -> float:
    """``N_z(r) = I / H``."""
    H, I = _height_dirichlet(a, u, z, r, spec)
    if not H > 1e-300:
        raise UndefinedFrequency(f"H = {H:.3g} at r = {r}")
    return I / H


@dataclass(frozen=True)
class FrequencyCurve:
    r_grid: tuple[float, ...]
    H: tuple[float, ...]
    I: tuple[float, ...]
    N: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.r_grid, self.r_grid[1:])):
            raise DomainError("r_grid must be increasing")
        if any(not h > 0.0 for h in self.H):
            raise UndefinedFrequency("H must be positive at every grid point")


def frequency_curve(a, u: CaloricField, z: float, r_grid: Sequence[float],
                    spec: QuadratureSpec | None = None) -> FrequencyCurve:
    HI = [_height_dirichlet(a, u, z, float(r), spec) for r in r_grid]
    H = tuple(h for h, _ in HI)
    if any(not h > 1e-300 for h in H):
        raise UndefinedFrequency("H vanishes on the grid")
    I = tuple(i for _, i in HI)
    return FrequencyCurve(tuple(float(r) for r in r_grid), H, I, tuple(i / h for h, i in zip(H, I)))


def struwe_scan(a, u: CaloricField, z: float, T: float, t_grid: Sequence[float],
                spec: QuadratureSpec | None = None) -> VerificationReport:
    """Check ``E`` along ``t_grid``: strictly decreasing (margin above 3x the
    quadrature error) for ``a >= 0, z > 0``, otherwise non-increasing.
    """
    a, z = float(a), float(z)
    strict = a >= 0.0 and z > 0.0
    vals = [_energy(a, u, z, T, float(t), spec) for t in t_grid]
    rows = []
    for (t0, (e0, err0)), (t1, (e1, err1)) in zip(zip(t_grid, vals), zip(t_grid[1:], vals[1:])):
        drop = e0 - e1
        noise = 3.0 * (err0 + err1) + 1e-14 * max(abs(e0), abs(e1))
        ok = drop > noise if strict and (e0 > noise or e1 > noise) else drop >= -noise
        rows.append(CaseRow("struwe", "energy monotonicity", a, z, math.nan, float(t1),
                            e0, e1, abs(drop), drop, ok))
    return VerificationReport("struwe", tuple(rows))


def poon_scan(a, u: CaloricField, z: float, r_grid: Sequence[float],
              spec: QuadratureSpec | None = None) -> tuple[FrequencyCurve, VerificationReport]:
    """``N`` along ``r_grid``: strictly increasing for ``a >= 0, z > 0``; otherwise
    non-decreasing, and constant to 1e-6 for homogeneous fields at ``z = 0``.
    """
    a, z = float(a), float(z)
    curve = frequency_curve(a, u, z, r_grid, spec)
    strict = a >= 0.0 and z > 0.0
    homogeneous = z == 0.0 and u.kappa is not None
    rows = []
    for r1, n0, n1 in zip(curve.r_grid[1:], curve.N, curve.N[1:]):
        rise = n1 - n0
        tol = 1e-10 * max(1.0, abs(n0))
        if homogeneous:
            ok = abs(rise) <= 1e-6
        elif strict:
            ok = rise > tol
        else:
            ok = rise >= -tol
        rows.append(CaseRow("poon", "frequency monotonicity", a, z, math.nan, r1, n0, n1,
                            abs(rise), rise, ok))
    return curve, VerificationReport("poon", tuple(rows))
