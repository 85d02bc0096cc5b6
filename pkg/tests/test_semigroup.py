from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselsg import DegenerateDatum, DomainError
from besselsg import semigroup as sg
from besselsg.quadrature import QuadratureSpec

SPEC = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-300)


def gaussian_evolution(a, alpha, z, t):
    """``P_t exp(-alpha zeta^2)(z) = q^{-(a+1)/2} exp(-alpha z^2 / q)``, ``q = 1 + 4 alpha t``.

    Follows from the Weber integral; at ``a = 0`` it is the heat flow of the
    even extension on the line.
    """
    q = 1.0 + 4.0 * alpha * t
    return q ** (-0.5 * (a + 1.0)) * math.exp(-alpha * z * z / q)


def test_constant_is_preserved():
    assert sg.apply(0.5, sg.constant_datum(), 2.0, 1.0, SPEC) == pytest.approx(1.0, abs=1e-9)
    assert sg.apply(-0.9, sg.constant_datum(3.0), 0.0, 0.1, SPEC) == pytest.approx(3.0, rel=1e-9)


def test_gaussian_at_zero_weight():
    for t in (0.1, 1.0, 5.0):
        assert sg.apply(0.0, sg.gaussian_datum(1.0), 0.0, t, SPEC) == pytest.approx((1 + 4 * t) ** -0.5, rel=1e-12)
        assert sg.apply(0.0, sg.gaussian_datum(1.0), 1.3, t, SPEC) == pytest.approx(
            (1 + 4 * t) ** -0.5 * math.exp(-1.69 / (1 + 4 * t)), rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.9, 4.0), st.floats(0.2, 5.0), st.floats(0.0, 5.0), st.floats(0.05, 3.0))
def test_gaussian_family(a, alpha, z, t):
    v = sg.evaluate(a, sg.gaussian_datum(alpha), z, t, SPEC)
    assert v.u == pytest.approx(gaussian_evolution(a, alpha, z, t), rel=1e-10)
    q = 1 + 4 * alpha * t
    assert v.dlog_z == pytest.approx(-2 * alpha * z / q, rel=1e-8, abs=1e-10)


def test_indicator_tends_to_one():
    phi = sg.indicator_datum(1.0, 2.0)
    vals = [sg.apply(1.0, phi, 1.5, t, SPEC) for t in (1e-1, 1e-2, 1e-3)]
    assert vals[0] < vals[1] < vals[2]
    assert vals[2] == pytest.approx(1.0, abs=1e-10)


def test_datum_validation():
    with pytest.raises(DomainError):
        sg.InitialDatum(lambda s: np.sin(s), sg.Bounded(1.0), nonnegative=True)
    with pytest.raises(DomainError):
        sg.InitialDatum(lambda s: 2.0 * np.ones_like(s), sg.Bounded(1.0))
    with pytest.raises(DomainError):
        sg.gaussian_datum(-1.0)
    with pytest.raises(DomainError):
        sg.bump_datum(1.0, 0.0)


def test_degenerate_datum():
    far = sg.bump_datum(100.0, 0.1)
    with pytest.raises(DegenerateDatum):
        sg.liyau_functional(1.0, far, 0.0, 0.01, SPEC)


def test_far_datum_keeps_relative_accuracy():
    # the log-shifted integral stays accurate where u itself is tiny
    a, alpha, z, t = 1.0, 1.0, 30.0, 0.2
    assert sg.log_apply(a, sg.gaussian_datum(alpha), z, t, SPEC) == pytest.approx(
        -0.5 * (a + 1) * math.log(1 + 4 * alpha * t) - alpha * z * z / (1 + 4 * alpha * t), rel=1e-12)


def test_semigroup_property():
    assert sg.semigroup_residual(0.7, sg.constant_datum(), 1.0, 0.5, 0.5) <= 1e-9
    assert sg.semigroup_residual(0.0, sg.gaussian_datum(1.0), 1.0, 0.3, 0.4) <= 1e-8
    assert sg.semigroup_residual(1.0, sg.bump_datum(1.0, 0.5), 1.0, 0.5, 0.5) <= 1e-6


def test_liyau_examples():
    rec = sg.liyau_functional(0.5, sg.constant_datum(), 1.0, 1.0, SPEC)
    assert rec.lhs == pytest.approx(0.0, abs=1e-8)
    rec = sg.liyau_functional(0.0, sg.gaussian_datum(1.0), 0.0, 1.0, SPEC)
    assert rec.lhs == pytest.approx(0.4, abs=1e-10)
    assert rec.bound == 0.5
    assert rec.lhs <= rec.bound + rec.remainder + 1e-10
    rec = sg.liyau_functional(2.0, sg.bump_datum(1.0, 0.5), 1.0, 0.5, SPEC)
    assert rec.lhs < rec.bound == pytest.approx(3.0)
    fd = sg.liyau_functional_fd(2.0, sg.bump_datum(1.0, 0.5), 1.0, 0.5)
    assert fd == pytest.approx(rec.lhs, rel=1e-4)


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.9, 4.0), st.floats(0.2, 4.0), st.floats(0.0, 4.0), st.floats(0.05, 3.0))
def test_liyau_on_gaussians(a, alpha, z, t):
    # lhs = 2 alpha (a+1) / (1 + 4 alpha t) exactly, strictly below (a+1)/2t
    rec = sg.liyau_functional(a, sg.gaussian_datum(alpha), z, t, SPEC)
    exact = 2 * alpha * (a + 1) / (1 + 4 * alpha * t)
    assert rec.lhs == pytest.approx(exact, rel=1e-7, abs=1e-9)
    assert rec.lhs <= rec.bound + rec.remainder + 1e-6
    if a >= 0 and z > 0:
        assert rec.lhs < rec.bound and rec.remainder < 0


def test_harnack_examples():
    assert sg.harnack_ratio(1.0, sg.constant_datum(), 3.0, 1.0, 0.0, 2.0) == pytest.approx(
        1 / (2 * math.exp(9 / 4)), rel=1e-9)
    assert sg.harnack_ratio(0.0, sg.gaussian_datum(1.0), 0.0, 1.0, 0.0, 2.0) == pytest.approx(
        3 / math.sqrt(5) / math.sqrt(2), rel=1e-10)
    assert sg.harnack_ratio(0.5, sg.bump_datum(1.0, 0.5), 0.01, 0.5, 0.0, 1.0) < 1.0
    with pytest.raises(DomainError):
        sg.harnack_ratio(0.0, sg.constant_datum(), 0.0, 2.0, 0.0, 1.0)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 4.0), st.floats(0.2, 3.0), st.floats(0.0, 3.0), st.floats(0.0, 3.0),
       st.floats(0.2, 3.0), st.floats(0.05, 0.95))
def test_harnack_on_gaussians(a, alpha, z, zeta, t, frac):
    s = frac * t
    r = sg.harnack_ratio(a, sg.gaussian_datum(alpha), z, s, zeta, t, SPEC)
    e = 0.5 * (a + 1)
    exact = gaussian_evolution(a, alpha, z, s) / (
        gaussian_evolution(a, alpha, zeta, t) * (t / s) ** e * math.exp((z - zeta) ** 2 / (4 * (t - s))))
    assert r == pytest.approx(exact, rel=1e-9)
    assert r < 1.0


def test_exponent_sharpness_probe():
    # constant datum: ratio (s/t)^{e - 0.05} < 1, so the literal probe cannot exceed 1
    a, s, t = 1.0, 1e-3, 1.0
    e = 0.5 * (a + 1) - 0.05
    r1 = sg.harnack_ratio(a, sg.constant_datum(), 0.0, s, 0.0, t, exponent=e)
    assert r1 == pytest.approx((s / t) ** e, rel=1e-9)
    # concentrated datum: decays like t^{-(a+1)/2}, so lowering the exponent breaks the bound
    r2 = sg.harnack_ratio(a, sg.gaussian_datum(1e4), 0.0, s, 0.0, t, exponent=e)
    exact = gaussian_evolution(a, 1e4, 0.0, s) / gaussian_evolution(a, 1e4, 0.0, t) * (s / t) ** e
    assert r2 == pytest.approx(exact, rel=1e-9)
    assert r2 > 1.0


def test_line_factors():
    g = sg.line_gaussian(1.0, 0.5)
    v, vx, vt = sg.heat_line(g, 0.2, 0.3)
    q = 1 + 1.2
    assert v == pytest.approx(q ** -0.5 * math.exp(-0.09 / q), rel=1e-14)
    # general route on a Gaussian-like compact factor agrees with differences
    b = sg.line_bump(0.0, 1.0)
    v, vx, vt = sg.heat_line(b, 0.3, 0.2)
    h = 1e-5
    assert vx == pytest.approx((sg.heat_line(b, 0.3 + h, 0.2)[0] - sg.heat_line(b, 0.3 - h, 0.2)[0]) / (2 * h), rel=1e-6)
    with pytest.raises(DomainError):
        sg.LineFactor("gaussian", alpha=0.0)


def test_extension_examples():
    one = sg.product_datum([sg.line_constant()], sg.constant_datum())
    assert sg.extension_apply(0.5, one, (0.3, 1.0), 1.0, SPEC) == pytest.approx(1.0, abs=1e-8)
    r = sg.extension_harnack_ratio(1.0, one, (0.0, 1.0), 1.0, (1.0, 0.0), 4.0)
    assert r == pytest.approx(1 / (4 ** 1.5 * math.exp(2 / 12)), rel=1e-8)
    gg = sg.product_datum([sg.line_gaussian(1.0)], sg.gaussian_datum(1.0))
    rec = sg.extension_liyau(0.0, gg, (0.0, 0.0), 1.0, SPEC)
    assert rec.lhs == pytest.approx(0.8, abs=1e-9)
    assert rec.bound == pytest.approx(1.0)


def test_extension_factorizes():
    a, X, t = 0.5, (0.4, 0.9), 0.7
    g, h = sg.line_gaussian(2.0, 0.1), sg.bump_datum(1.0, 0.5)
    U = sg.extension_apply(a, sg.product_datum([g], h), X, t, SPEC)
    assert U == pytest.approx(sg.heat_line(g, X[0], t)[0] * sg.apply(a, h, X[1], t, SPEC), rel=1e-12)


def test_extension_liyau_compact():
    Phi = sg.product_datum([sg.line_bump(0.0, 1.0), sg.line_gaussian(0.5, 0.5)], sg.bump_datum(1.0, 0.5))
    rec = sg.extension_liyau(2.0, Phi, (0.2, 0.2, 1.0), 0.5, SPEC)
    assert rec.lhs < rec.bound
    fd = sg.extension_liyau_fd(2.0, Phi, (0.2, 0.2, 1.0), 0.5)
    assert fd == pytest.approx(rec.lhs, rel=1e-4)


def test_extension_harnack_near_thin_set_is_stable():
    Phi = sg.product_datum([sg.line_gaussian(1.0)], sg.gaussian_datum(1.0))
    vals = [sg.extension_harnack_ratio(0.5, Phi, (0.0, z), 0.5, (0.0, z), 1.0) for z in (1e-2, 1e-4, 1e-6)]
    assert all(v < 1.0 for v in vals)
    assert max(vals) - min(vals) < 1e-3
