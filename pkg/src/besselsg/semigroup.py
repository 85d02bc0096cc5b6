"""The Neumann Bessel semigroup ``P_t^(a)`` and the extension semigroup on
``R^n x (0, inf)``, applied to declared initial data, together with the
Li-Yau functional and the Harnack ratio built on them.

Values of ``P_t phi`` are integrated against a kernel that is shifted by its
largest log value over the integration range, so data far from ``z`` keep
full relative accuracy instead of underflowing.  Derivatives are obtained by
differentiating the kernel under the integral sign; finite-difference
versions are provided as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .errors import DegenerateDatum, DomainError
from .kernels import log_derivatives, log_heat_kernel
from .quadrature import QuadratureSpec, integrate_interval_many, integrate_weighted_many

_SAMPLES = 257
_SPOT_SLACK = 1e-12
_DEGENERATE = 1e-300


@dataclass(frozen=True)
class CompactSupport:
    """``f`` vanishes outside ``[lo, R]``."""

    R: float
    lo: float = 0.0


@dataclass(frozen=True)
class GaussianDominated:
    """``|f(zeta)| <= c exp(-(zeta - center)^2 / 2 sigma^2)``."""

    c: float
    sigma: float
    center: float = 0.0


@dataclass(frozen=True)
class Bounded:
    """``|f| <= M`` everywhere; the kernel alone supplies the decay."""

    M: float


Decay = Union[CompactSupport, GaussianDominated, Bounded]


def _validate_decay(decay: Decay) -> None:
    if isinstance(decay, CompactSupport):
        if not (0.0 <= decay.lo < decay.R < math.inf):
            raise DomainError("compact support needs 0 <= lo < R < inf")
    elif isinstance(decay, GaussianDominated):
        if not (decay.c > 0.0 and decay.sigma > 0.0 and math.isfinite(decay.center)):
            raise DomainError("Gaussian bound needs c > 0, sigma > 0")
    elif isinstance(decay, Bounded):
        if not decay.M > 0.0:
            raise DomainError("bound M must be positive")
    else:
        raise DomainError(f"unsupported decay class {type(decay).__name__}")


def _sample_grid(decay: Decay, lo: float = 0.0) -> np.ndarray:
    if isinstance(decay, CompactSupport):
        pad = 0.5 * (decay.R - decay.lo) + 1.0
        hi = decay.R + pad
    elif isinstance(decay, GaussianDominated):
        hi = max(decay.center, 0.0) + 8.0 * decay.sigma
    else:
        hi = 50.0
    grid = np.concatenate([np.linspace(lo, hi, _SAMPLES), lo + np.geomspace(1e-6, hi - lo, 64)])
    return np.unique(grid[grid > lo] if lo == 0.0 else grid)


def _spot_check(f: Callable, decay: Decay, nonnegative: bool, grid: np.ndarray, what: str) -> None:
    vals = np.asarray(f(grid), dtype=float) * np.ones_like(grid)
    if not np.all(np.isfinite(vals)):
        raise DomainError(f"{what} is not finite on the sample grid")
    if nonnegative and np.any(vals < 0.0):
        raise DomainError(f"{what} declared nonnegative but takes negative values")
    mag = np.abs(vals)
    if isinstance(decay, CompactSupport):
        outside = (grid < decay.lo) | (grid > decay.R)
        bad = outside & (mag > 0.0)
    elif isinstance(decay, GaussianDominated):
        env = decay.c * np.exp(-((grid - decay.center) ** 2) / (2.0 * decay.sigma ** 2))
        bad = mag > env * (1.0 + _SPOT_SLACK) + 1e-300
    else:
        bad = mag > decay.M * (1.0 + _SPOT_SLACK)
    if np.any(bad):
        raise DomainError(f"{what} violates its declared decay bound at {grid[bad][0]:.6g}")


@dataclass(frozen=True)
class InitialDatum:
    """A function on ``(0, inf)`` with declared sign and decay.

    ``f`` must accept numpy arrays.  ``smooth`` asserts membership in the
    class of ``C^1`` data with ``zeta^a f'(zeta) -> 0`` at the boundary; it is
    informational and only used to pick finite-difference checks.
    ``breakpoints`` are kinks or jumps that the integrator should respect.
    """

    f: Callable[[np.ndarray], np.ndarray]
    decay: Decay
    nonnegative: bool = True
    smooth: bool = True
    breakpoints: tuple[float, ...] = ()
    name: str = "datum"
    # off only for internally built data whose decay is a proven envelope
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self) -> None:
        _validate_decay(self.decay)
        if self.validate:
            _spot_check(self.f, self.decay, self.nonnegative, _sample_grid(self.decay), self.name)

    def __call__(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        return np.asarray(self.f(zeta), dtype=float) * np.ones_like(zeta)


def constant_datum(c: float = 1.0) -> InitialDatum:
    c = float(c)
    return InitialDatum(lambda s: np.full_like(s, c), Bounded(abs(c) or 1.0), nonnegative=c >= 0.0,
                        name=f"constant({c:g})")


def gaussian_datum(alpha: float = 1.0, center: float = 0.0, amp: float = 1.0) -> InitialDatum:
    """``amp * exp(-alpha (zeta - center)^2)``."""
    if not alpha > 0.0:
        raise DomainError("alpha must be positive")
    return InitialDatum(lambda s: amp * np.exp(-alpha * (s - center) ** 2),
                        GaussianDominated(abs(amp), 1.0 / math.sqrt(2.0 * alpha), center),
                        nonnegative=amp >= 0.0, name=f"gaussian({alpha:g},{center:g})")


def bump_datum(center: float, radius: float, amp: float = 1.0) -> InitialDatum:
    """Smooth compactly supported ``amp * exp(1 - 1/(1 - ((zeta-center)/radius)^2))``."""
    if not radius > 0.0:
        raise DomainError("radius must be positive")
    lo, hi = max(center - radius, 0.0), center + radius

    def f(s):
        u = (s - center) / radius
        inside = np.abs(u) < 1.0
        out = np.zeros_like(s)
        out[inside] = amp * np.exp(1.0 - 1.0 / (1.0 - u[inside] ** 2))
        return out

    return InitialDatum(f, CompactSupport(hi, lo), nonnegative=amp >= 0.0,
                        smooth=center - radius >= 0.0, name=f"bump({center:g},{radius:g})")


def indicator_datum(lo: float, hi: float) -> InitialDatum:
    """The indicator of ``[lo, hi]``."""
    return InitialDatum(lambda s: ((s >= lo) & (s <= hi)).astype(float), CompactSupport(hi, lo),
                        smooth=False, breakpoints=(lo, hi), name=f"indicator[{lo:g},{hi:g}]")


@dataclass(frozen=True)
class SemigroupValue:
    """``P_t phi(z)`` with its kernel-differentiated derivatives.

    ``u_z``, ``u_t`` and ``remainder`` are ratios to ``u`` (log-derivatives).
    ``log_u`` stays finite when ``u`` underflows.
    """

    u: float
    log_u: float
    dlog_z: float
    dlog_t: float
    remainder: float
    error_estimate: float


def _range(a: float, phi: InitialDatum, z: float, t: float, spec: QuadratureSpec):
    width = math.sqrt(2.0 * t)
    d = phi.decay
    if isinstance(d, CompactSupport):
        return dict(lower=d.lo, upper=d.R, width=min(width, d.R - d.lo))
    if isinstance(d, GaussianDominated):
        # the kernel (variance 2t around z) times the Gaussian envelope
        prec = 1.0 / (2.0 * t) + 1.0 / d.sigma ** 2
        var = 1.0 / prec
        center = var * (z / (2.0 * t) + d.center / d.sigma ** 2)
        return dict(center=center, width=math.sqrt(var))
    return dict(center=z, width=width)


def _log_shift(a: float, z: float, t: float, lo: float, hi: float) -> float:
    # largest kernel log over the range; the kernel in zeta peaks near z
    grid = np.unique(np.concatenate([np.linspace(lo, hi, 129), [min(max(z, lo), hi)]]))
    return float(np.max(log_heat_kernel(a, z, grid, t)))


def _evaluate(a: float, phi: InitialDatum, z: float, t: float, spec: QuadratureSpec | None,
              derivatives: bool) -> SemigroupValue:
    a, z, t = float(a), float(z), float(t)
    if not a > -1.0:
        raise DomainError("a must exceed -1")
    if not (z >= 0.0 and math.isfinite(z)) or not (t > 0.0 and math.isfinite(t)):
        raise DomainError("need z >= 0 and t > 0")
    spec = spec or QuadratureSpec()
    kw = _range(a, phi, z, t, spec)
    reach = spec.tail_sigma * kw["width"]
    lo = kw.get("lower", max(kw.get("center", 0.0) - reach, 0.0))
    hi = kw.get("upper", kw.get("center", 0.0) + reach)
    shift = _log_shift(a, z, t, lo, hi)
    points = tuple(p for p in phi.breakpoints if lo < p < hi)

    if derivatives:
        def f(s):
            w = phi(s) * np.exp(log_heat_kernel(a, z, s, t) - shift)
            gz, gt, rem = log_derivatives(a, z, s, t)
            return np.stack([w, w * gz, w * gt, w * rem])
    else:
        def f(s):
            return (phi(s) * np.exp(log_heat_kernel(a, z, s, t) - shift))[None, :]

    res = integrate_weighted_many(f, a, spec, points=points, **kw)
    total = float(res.value[0])
    log_u = math.log(total) + shift if total > 0.0 else -math.inf
    u = math.exp(log_u) if total > 0.0 else total * math.exp(shift)
    if not derivatives:
        return SemigroupValue(u, log_u, math.nan, math.nan, math.nan, float(res.error_estimate[0]))
    if log_u < math.log(_DEGENERATE):
        raise DegenerateDatum(f"P_t phi(z) = exp({log_u:.4g}) is below {_DEGENERATE:g}")
    v = res.value / total
    return SemigroupValue(u, log_u, float(v[1]), float(v[2]), float(v[3]),
                          float(res.error_estimate[0]) * math.exp(shift))


def apply(a, phi: InitialDatum, z: float, t: float, spec: QuadratureSpec | None = None) -> float:
    """``P_t^(a) phi(z) = int_0^inf phi(zeta) p^(a)(z, zeta, t) zeta^a d zeta``."""
    return _evaluate(a, phi, z, t, spec, derivatives=False).u


def evaluate(a, phi: InitialDatum, z: float, t: float, spec: QuadratureSpec | None = None) -> SemigroupValue:
    """``P_t phi(z)`` together with its log-derivatives in ``z`` and ``t``."""
    return _evaluate(a, phi, z, t, spec, derivatives=True)


def log_apply(a, phi: InitialDatum, z: float, t: float, spec: QuadratureSpec | None = None) -> float:
    return _evaluate(a, phi, z, t, spec, derivatives=False).log_u


def semigroup_residual(a, phi: InitialDatum, z: float, s: float, t: float,
                       spec: QuadratureSpec | None = None) -> float:
    """``|P_t(P_s phi)(z) - P_{t+s} phi(z)|`` by nested quadrature."""
    if not (s > 0.0 and t > 0.0):
        raise DomainError("s and t must be positive")
    spec = spec or QuadratureSpec(rel_tol=1e-11)
    outer = spec.with_(rel_tol=max(spec.rel_tol, 1e-10))

    def inner(zeta):
        return np.array([apply(a, phi, float(x), s, spec) for x in np.atleast_1d(zeta)])

    d = phi.decay
    if isinstance(d, CompactSupport):
        # P_s phi is dominated by a Gaussian of variance 2s around the support
        mid, half = 0.5 * (d.lo + d.R), 0.5 * (d.R - d.lo)
        env = GaussianDominated(1.0, math.sqrt(2.0 * s) + half, mid)
    elif isinstance(d, GaussianDominated):
        env = GaussianDominated(d.c, math.sqrt(d.sigma ** 2 + 2.0 * s), d.center)
    else:
        env = Bounded(d.M)
    # the envelope only places the window; spot-checking it would cost hundreds of inner integrals
    shifted = InitialDatum(inner, env, phi.nonnegative, name=f"P_s {phi.name}", validate=False)
    lhs = apply(a, shifted, z, t, outer)
    rhs = apply(a, phi, z, t + s, spec)
    return abs(lhs - rhs)


@dataclass(frozen=True)
class LiYauRecord:
    lhs: float
    bound: float
    remainder: float

    @property
    def margin(self) -> float:
        """``bound - lhs``; positive when the sharp inequality holds."""
        return self.bound - self.lhs


def liyau_functional(a, phi: InitialDatum, z: float, t: float,
                     spec: QuadratureSpec | None = None) -> LiYauRecord:
    """``(d_z log P_t phi)^2 - d_t log P_t phi`` with its bound ``(a+1)/2t``
    and the remainder ``(1/P_t phi) int phi zeta^2/4t^2 (y^2 - 1) p zeta^a``.
    """
    if not phi.nonnegative:
        raise DomainError("the Li-Yau functional needs nonnegative data")
    spec = spec or QuadratureSpec(rel_tol=1e-12)
    v = evaluate(a, phi, z, t, spec)
    lhs = v.dlog_z ** 2 - v.dlog_t
    return LiYauRecord(lhs, (float(a) + 1.0) / (2.0 * t), v.remainder)


def fd_log_derivatives(a, phi: InitialDatum, z: float, t: float,
                       spec: QuadratureSpec | None = None) -> tuple[float, float]:
    """Central differences of ``log P_t phi`` with ``h = 1e-5 max(1, z)`` in ``z``
    and ``h = 1e-5 t`` in ``t``.  ``P_t phi`` is even in ``z``, so ``|z - h|``
    is used below the boundary.
    """
    spec = spec or QuadratureSpec(rel_tol=1e-13, abs_tol=1e-300)
    hz, ht = 1e-5 * max(1.0, z), 1e-5 * t
    lz = (log_apply(a, phi, z + hz, t, spec) - log_apply(a, phi, abs(z - hz), t, spec)) / (2.0 * hz)
    lt = (log_apply(a, phi, z, t + ht, spec) - log_apply(a, phi, z, t - ht, spec)) / (2.0 * ht)
    return lz, lt


def liyau_functional_fd(a, phi: InitialDatum, z: float, t: float,
                        spec: QuadratureSpec | None = None) -> float:
    lz, lt = fd_log_derivatives(a, phi, z, t, spec)
    return lz * lz - lt


def log_harnack_ratio(a, phi: InitialDatum, z: float, s: float, zeta: float, t: float,
                      spec: QuadratureSpec | None = None, exponent: float | None = None) -> float:
    if not 0.0 < s < t:
        raise DomainError("need 0 < s < t")
    if not phi.nonnegative:
        raise DomainError("the Harnack ratio needs nonnegative data")
    spec = spec or QuadratureSpec(rel_tol=1e-12)
    e = 0.5 * (float(a) + 1.0) if exponent is None else exponent
    num = log_apply(a, phi, z, s, spec)
    den = log_apply(a, phi, zeta, t, spec)
    if den == -math.inf:
        raise DegenerateDatum("P_t phi vanishes at (zeta, t)")
    return num - den - e * math.log(t / s) - (z - zeta) ** 2 / (4.0 * (t - s))


def harnack_ratio(a, phi: InitialDatum, z: float, s: float, zeta: float, t: float,
                  spec: QuadratureSpec | None = None, exponent: float | None = None) -> float:
    """``P_s phi(z) / [P_t phi(zeta) (t/s)^e exp((z-zeta)^2 / 4(t-s))]`` with
    ``e = (a+1)/2`` unless ``exponent`` overrides it.
    """
    return math.exp(log_harnack_ratio(a, phi, z, s, zeta, t, spec, exponent))


# --- extension semigroup on R^n x (0, inf) ------------------------------------

@dataclass(frozen=True)
class LineFactor:
    """A factor ``g(x_i)`` on the real line.

    ``kind`` is ``"constant"`` or ``"gaussian"`` (``amp exp(-alpha (x - center)^2)``),
    which have closed-form heat evolutions, or ``"general"`` which is integrated
    numerically over ``[lo, hi]``.
    """

    kind: str
    amp: float = 1.0
    alpha: float = 0.0
    center: float = 0.0
    f: Callable | None = None
    lo: float = -math.inf
    hi: float = math.inf
    nonnegative: bool = True

    def __post_init__(self) -> None:
        if self.kind == "gaussian" and not self.alpha > 0.0:
            raise DomainError("Gaussian factor needs alpha > 0")
        if self.kind == "general":
            if self.f is None or not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
                raise DomainError("general factors need f and a finite support [lo, hi]")
            grid = np.linspace(self.lo - 1.0, self.hi + 1.0, _SAMPLES)
            vals = np.asarray(self.f(grid), dtype=float)
            if np.any(((grid < self.lo) | (grid > self.hi)) & (vals != 0.0)):
                raise DomainError("general factor is nonzero outside its support")
            if self.nonnegative and np.any(vals < 0.0):
                raise DomainError("factor declared nonnegative but takes negative values")
        elif self.kind not in ("constant", "gaussian"):
            raise DomainError(f"unknown factor kind {self.kind!r}")
        if self.kind != "general" and self.nonnegative and self.amp < 0.0:
            raise DomainError("factor declared nonnegative but amp < 0")


def line_constant(c: float = 1.0) -> LineFactor:
    return LineFactor("constant", amp=c, nonnegative=c >= 0.0)


def line_gaussian(alpha: float = 1.0, center: float = 0.0, amp: float = 1.0) -> LineFactor:
    return LineFactor("gaussian", amp=amp, alpha=alpha, center=center, nonnegative=amp >= 0.0)


def line_bump(center: float, radius: float) -> LineFactor:
    def f(x):
        u = (np.asarray(x, dtype=float) - center) / radius
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - u[inside] ** 2))
        return out

    return LineFactor("general", f=f, lo=center - radius, hi=center + radius)


def heat_line(g: LineFactor, x: float, t: float, spec: QuadratureSpec | None = None) -> tuple[float, float, float]:
    """``(G, d_x G, d_t G)`` for ``G = (Gaussian kernel on R) * g`` at ``(x, t)``."""
    if g.kind == "constant":
        return g.amp, 0.0, 0.0
    if g.kind == "gaussian":
        q = 1.0 + 4.0 * g.alpha * t
        d = x - g.center
        val = g.amp * math.exp(-0.5 * math.log(q) - g.alpha * d * d / q)
        return val, val * (-2.0 * g.alpha * d / q), val * (-2.0 * g.alpha / q + 4.0 * g.alpha ** 2 * d * d / (q * q))
    spec = spec or QuadratureSpec(rel_tol=1e-12)
    c = 1.0 / math.sqrt(4.0 * math.pi * t)

    def f(y):
        d = x - y
        k = g.f(y) * c * np.exp(-d * d / (4.0 * t))
        return np.stack([k, k * (-d / (2.0 * t)), k * (-0.5 / t + d * d / (4.0 * t * t))])

    width = math.sqrt(2.0 * t)
    lo = max(g.lo, x - spec.tail_sigma * width)
    hi = min(g.hi, x + spec.tail_sigma * width)
    if not hi > lo:
        return 0.0, 0.0, 0.0
    panels = int(min(64, max(4, math.ceil((hi - lo) / width))))
    r = integrate_interval_many(f, lo, hi, spec, panels=panels)
    return float(r.value[0]), float(r.value[1]), float(r.value[2])


@dataclass(frozen=True)
class ExtensionTerm:
    coef: float
    x_factors: tuple[LineFactor, ...]
    z_factor: InitialDatum


@dataclass(frozen=True)
class ExtensionDatum:
    """``Phi(x, z) = sum_k coef_k prod_i g_{k,i}(x_i) h_k(z)``."""

    terms: tuple[ExtensionTerm, ...]
    nonnegative: bool = True

    def __post_init__(self) -> None:
        if not self.terms:
            raise DomainError("an extension datum needs at least one term")
        n = len(self.terms[0].x_factors)
        if n < 1 or any(len(term.x_factors) != n for term in self.terms):
            raise DomainError("all terms must have the same dimension n >= 1")
        if self.nonnegative:
            ok = all(term.coef >= 0.0 and term.z_factor.nonnegative and all(g.nonnegative for g in term.x_factors)
                     for term in self.terms)
            if not ok:
                raise DomainError("nonnegativity declared but a factor or coefficient is signed")

    @property
    def n(self) -> int:
        return len(self.terms[0].x_factors)

    def __call__(self, x: Sequence[float], z: float) -> float:
        total = 0.0
        for term in self.terms:
            v = term.coef * float(term.z_factor(np.array([z]))[0])
            for g, xi in zip(term.x_factors, x):
                if g.kind == "constant":
                    v *= g.amp
                elif g.kind == "gaussian":
                    v *= g.amp * math.exp(-g.alpha * (xi - g.center) ** 2)
                else:
                    v *= float(g.f(np.array([xi]))[0])
            total += v
        return total


def product_datum(x_factors: Sequence[LineFactor], z_factor: InitialDatum, coef: float = 1.0) -> ExtensionDatum:
    return ExtensionDatum((ExtensionTerm(coef, tuple(x_factors), z_factor),),
                          nonnegative=coef >= 0.0 and z_factor.nonnegative and all(g.nonnegative for g in x_factors))


@dataclass(frozen=True)
class ExtensionValue:
    u: float
    grad_x: tuple[float, ...]
    u_z: float
    u_t: float


def _split(X: Sequence[float], n: int) -> tuple[list[float], float]:
    X = [float(v) for v in X]
    if len(X) != n + 1:
        raise DomainError(f"X must have n + 1 = {n + 1} coordinates")
    if not X[-1] >= 0.0:
        raise DomainError("the last coordinate of X must be nonnegative")
    return X[:-1], X[-1]


def extension_evaluate(a, Phi: ExtensionDatum, X: Sequence[float], t: float,
                       spec: QuadratureSpec | None = None) -> ExtensionValue:
    """``U(X, t)``, its spatial gradient and time derivative, by factorization."""
    x, z = _split(X, Phi.n)
    if not t > 0.0:
        raise DomainError("t must be positive")
    spec = spec or QuadratureSpec(rel_tol=1e-12)
    u, uz, ut = 0.0, 0.0, 0.0
    gx = [0.0] * Phi.n
    for term in Phi.terms:
        lines = [heat_line(g, xi, t, spec) for g, xi in zip(term.x_factors, x)]
        h = _evaluate(a, term.z_factor, z, t, spec, derivatives=True)
        hv, hz, ht = h.u, h.u * h.dlog_z, h.u * h.dlog_t
        prod = term.coef * math.prod(G for G, _, _ in lines)
        u += prod * hv
        uz += prod * hz
        ut += prod * ht
        for i, (G, Gx, Gt) in enumerate(lines):
            others = term.coef * math.prod(L[0] for j, L in enumerate(lines) if j != i)
            gx[i] += others * Gx * hv
            ut += others * Gt * hv
    return ExtensionValue(u, tuple(gx), uz, ut)


def extension_apply(a, Phi: ExtensionDatum, X: Sequence[float], t: float,
                    spec: QuadratureSpec | None = None) -> float:
    """``U(X, t) = int Phi(Y) G_a(X, Y, t) zeta^a dY``."""
    x, z = _split(X, Phi.n)
    spec = spec or QuadratureSpec(rel_tol=1e-12)
    total = 0.0
    for term in Phi.terms:
        v = term.coef * apply(a, term.z_factor, z, t, spec)
        for g, xi in zip(term.x_factors, x):
            v *= heat_line(g, xi, t, spec)[0]
        total += v
    return total


def log_extension_harnack_ratio(a, Phi: ExtensionDatum, X: Sequence[float], s: float, Y: Sequence[float], t: float,
                                spec: QuadratureSpec | None = None, exponent: float | None = None) -> float:
    if not 0.0 < s < t:
        raise DomainError("need 0 < s < t")
    if not Phi.nonnegative:
        raise DomainError("the Harnack ratio needs nonnegative data")
    _split(X, Phi.n), _split(Y, Phi.n)
    e = 0.5 * (Phi.n + float(a) + 1.0) if exponent is None else exponent
    num = extension_apply(a, Phi, X, s, spec)
    den = extension_apply(a, Phi, Y, t, spec)
    if not (num > 0.0 and den > 0.0):
        raise DegenerateDatum("U vanishes at one of the points")
    d2 = sum((float(p) - float(q)) ** 2 for p, q in zip(X, Y))
    return math.log(num) - math.log(den) - e * math.log(t / s) - d2 / (4.0 * (t - s))


def extension_harnack_ratio(a, Phi: ExtensionDatum, X: Sequence[float], s: float, Y: Sequence[float], t: float,
                            spec: QuadratureSpec | None = None, exponent: float | None = None) -> float:
    """``U(X,s) / [U(Y,t) (t/s)^e exp(|X-Y|^2 / 4(t-s))]``, ``e = (n+a+1)/2`` by default."""
    return math.exp(log_extension_harnack_ratio(a, Phi, X, s, Y, t, spec, exponent))


@dataclass(frozen=True)
class ExtensionLiYauRecord:
    lhs: float
    bound: float

    @property
    def margin(self) -> float:
        return self.bound - self.lhs


def extension_liyau(a, Phi: ExtensionDatum, X: Sequence[float], t: float,
                    spec: QuadratureSpec | None = None) -> ExtensionLiYauRecord:
    """``|grad_X log U|^2 - d_t log U`` against ``(n+a+1)/2t``."""
    if not Phi.nonnegative:
        raise DomainError("the Li-Yau functional needs nonnegative data")
    v = extension_evaluate(a, Phi, X, t, spec)
    if not v.u > _DEGENERATE:
        raise DegenerateDatum("U vanishes at this point")
    grad2 = (sum(g * g for g in v.grad_x) + v.u_z ** 2) / (v.u * v.u)
    return ExtensionLiYauRecord(grad2 - v.u_t / v.u, 0.5 * (Phi.n + float(a) + 1.0) / t)


def extension_liyau_fd(a, Phi: ExtensionDatum, X: Sequence[float], t: float,
                       spec: QuadratureSpec | None = None) -> float:
    """Finite-difference version of :func:`extension_liyau` (``h = 1e-5 max(1, |X_i|)``)."""
    spec = spec or QuadratureSpec(rel_tol=1e-13, abs_tol=1e-300)
    X = [float(v) for v in X]

    def logU(Xp, tp):
        return math.log(extension_apply(a, Phi, Xp, tp, spec))

    grad2 = 0.0
    for i in range(len(X)):
        h = 1e-5 * max(1.0, abs(X[i]))
        up, dn = list(X), list(X)
        up[i] += h
        dn[i] -= h
        if i == len(X) - 1:
            dn[i] = abs(dn[i])  # U is even in z
        g = (logU(up, t) - logU(dn, t)) / (2.0 * h)
        grad2 += g * g
    ht = 1e-5 * t
    return grad2 - (logU(X, t + ht) - logU(X, t - ht)) / (2.0 * ht)
