from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselsg import DomainError
from besselsg import kernels as k
from besselsg.quadrature import QuadratureSpec, integrate_weighted

# p^(a)(z, zeta, t) from the series/Bessel formula in mpmath (40 digits), frozen.
P_REF = [
    ((0.5, 1.0, 2.0, 0.7), 0.22577740904217433),
    ((-0.5, 3.0, 0.2, 1.5), 0.08125953566911463),
    ((2.0, 10.0, 11.0, 0.5), 0.0021997338592649397),
    ((4.0, 0.0, 2.0, 1.0), 0.017296145725858112),
    ((0.5, 0.0, 2.0, 1.0), 0.212278849299295),
    ((-0.9, 1.0, 1.0, 0.05), 1.2188754105971942),
]

a_s = st.floats(-0.95, 5.0)
pos = st.floats(0.0, 30.0)
ts = st.floats(0.02, 10.0)


@pytest.mark.parametrize("args,ref", P_REF)
def test_heat_kernel_reference(args, ref):
    assert k.heat_kernel(*args) == pytest.approx(ref, rel=1e-13)


def test_heat_kernel_examples():
    assert k.heat_kernel(0.0, 1.0, 1.0, 1.0) == pytest.approx((4 * math.pi) ** -0.5 * (1 + math.exp(-1)), abs=1e-9)
    assert k.heat_kernel(0.0, 0.0, 0.0, 1.0) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)
    # boundary formula with an independent Gamma evaluation
    assert k.heat_kernel(0.5, 0.0, 2.0, 1.0) == pytest.approx(math.exp(-1) / (2 ** 0.5 * math.gamma(0.75)), rel=1e-14)
    assert k.boundary_kernel(0.5, 2.0, 1.0) == pytest.approx(k.heat_kernel(0.5, 0.0, 2.0, 1.0), rel=1e-14)


def test_domain():
    with pytest.raises(DomainError):
        k.heat_kernel(-1.0, 1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        k.heat_kernel(0.0, 1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        k.heat_kernel(0.0, -1.0, 1.0, 1.0)


def test_far_field_is_finite():
    v = k.log_heat_kernel(1.0, 500.0, 500.0, 0.01)
    assert math.isfinite(v)


@settings(max_examples=60, deadline=None)
@given(a_s, pos, pos, ts, st.floats(0.1, 10.0))
def test_scaling(a, z, zeta, t, lam):
    lhs = k.log_heat_kernel(a, lam * z, lam * zeta, lam * lam * t)
    rhs = k.log_heat_kernel(a, z, zeta, t) - (a + 1) * math.log(lam)
    # relative agreement of p, up to the rounding already present in a large |log p|
    assert abs(lhs - rhs) <= 1e-12 + 4e-16 * abs(rhs)


@settings(max_examples=60, deadline=None)
@given(a_s, pos, pos, ts)
def test_symmetry(a, z, zeta, t):
    assert k.log_heat_kernel(a, z, zeta, t) == pytest.approx(k.log_heat_kernel(a, zeta, z, t), rel=1e-13, abs=1e-13)


def test_reflection_examples():
    for t in (0.1, 1.0, 7.0):
        assert k.heat_kernel_reflection(0.0, 0.0, t) == pytest.approx(2 * (4 * math.pi * t) ** -0.5, rel=1e-15)
        z = 1.7
        assert k.heat_kernel_reflection(z, z, t) == pytest.approx((4 * math.pi * t) ** -0.5 * (1 + math.exp(-z * z / t)),
                                                                  rel=1e-14)
    assert k.reflection_residual(3.0, 1.0, 0.5) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 40.0), st.floats(0.0, 40.0), st.floats(0.01, 10.0))
def test_reflection(z, zeta, t):
    # exp(log p) is conditioned by |log p|; one rounding of the exponent already costs eps |log p|
    log_p = abs(float(k.log_heat_kernel(0.0, z, zeta, t)))
    assert k.reflection_residual(z, zeta, t) <= 1e-12 + 4e-16 * log_p


def test_log_derivative_examples():
    assert k.log_grad_z(1.0, 0.0, 5.0, 2.0) == 0.0
    assert k.log_grad_z(0.0, 1.0, 1.0, 1.0) == pytest.approx(math.tanh(0.5) / 2 - 0.5, abs=1e-15)
    assert k.log_deriv_t(1.0, 0.0, 2.0, 1.0) == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(a_s, st.floats(0.1, 10.0), st.floats(0.0, 10.0), st.floats(0.1, 5.0))
def test_log_derivatives_against_differences(a, z, zeta, t):
    hz, ht = 1e-6 * max(1.0, z), 1e-6 * t
    fz = (k.log_heat_kernel(a, z + hz, zeta, t) - k.log_heat_kernel(a, z - hz, zeta, t)) / (2 * hz)
    ft = (k.log_heat_kernel(a, z, zeta, t + ht) - k.log_heat_kernel(a, z, zeta, t - ht)) / (2 * ht)
    scale = 1 + (z * z + zeta * zeta) / t ** 2
    assert k.log_grad_z(a, z, zeta, t) == pytest.approx(fz, abs=1e-5 * scale)
    assert k.log_deriv_t(a, z, zeta, t) == pytest.approx(ft, abs=1e-5 * scale)


def test_liyau_examples():
    g = k.liyau_gap(1.0, 0.0, 2.0, 1.0)
    assert g.formula == pytest.approx(0.0, abs=1e-15)
    g = k.liyau_gap(0.0, 1.0, 1.0, 1.0)
    assert g.formula == pytest.approx(0.5 + 0.25 * (math.tanh(0.5) ** 2 - 1), abs=1e-15)
    assert g.formula == pytest.approx(0.303388, abs=1e-6)


@settings(max_examples=80, deadline=None)
@given(a_s, pos, pos, ts)
def test_liyau_routes_agree(a, z, zeta, t):
    g = k.liyau_gap(a, z, zeta, t)
    assert g.agreement <= 1e-10
    if a >= 0 and z > 0 and zeta > 0:
        assert g.formula < g.bound or g.log_margin > -math.inf
    if z == 0:
        assert g.formula == pytest.approx(g.bound - zeta * zeta / (4 * t * t), rel=1e-10, abs=1e-10)


def test_liyau_margin_is_finite_in_log_form_where_it_underflows():
    g = k.liyau_gap(2.0, 400.0, 400.0, 0.01)
    assert g.log_margin > -math.inf


@pytest.mark.parametrize("a", [-0.9, -0.5, 0.0, 0.5, 4.0])
@pytest.mark.parametrize("z", [0.0, 1.0, 20.0])
@pytest.mark.parametrize("t", [0.05, 2.0])
def test_stochastic_completeness(a, z, t):
    spec = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-300)
    assert abs(k.stochastic_completeness(a, z, t, spec) - 1.0) <= 1e-9


def test_stochastic_completeness_example():
    assert k.stochastic_completeness(0.5, 1.0, 1.0) == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=20, deadline=None)
@given(st.floats(-0.9, 4.0), st.floats(0.0, 5.0), st.floats(0.0, 5.0), st.floats(0.1, 3.0), st.floats(0.1, 3.0))
def test_chapman_kolmogorov(a, z, eta, s, t):
    assert k.chapman_kolmogorov_residual(a, z, eta, s, t) <= 1e-8


def test_extension_kernel():
    a, z, zeta, t = 0.5, 0.7, 1.2, 0.8
    assert k.extension_kernel(a, [0.3], z, [0.3], zeta, t) == pytest.approx(
        (4 * math.pi * t) ** -0.5 * k.heat_kernel(a, z, zeta, t), rel=1e-14)
    lam = 1.7
    v = k.extension_kernel(a, [0.1, -0.4], z, [0.5, 0.2], zeta, t)
    w = k.extension_kernel(a, [lam * 0.1, -lam * 0.4], lam * z, [lam * 0.5, lam * 0.2], lam * zeta, lam * lam * t)
    assert w == pytest.approx(lam ** -(2 + a + 1) * v, rel=1e-12)
    with pytest.raises(DomainError):
        k.extension_kernel(a, [0.0, 1.0], z, [0.0], zeta, t)


def test_extension_normalization():
    # Gaussian part integrates to 1 on R; the Bessel part by stochastic completeness
    a, t = 0.5, 0.8
    spec = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-300)
    gx = integrate_weighted(lambda y: k.gaussian_kernel(y[:, None], np.array([0.3]), t), 0.0, spec,
                            lower=0.0, upper=20.0, width=1.0).value
    gx += integrate_weighted(lambda y: k.gaussian_kernel(-y[:, None], np.array([0.3]), t), 0.0, spec,
                             lower=0.0, upper=20.0, width=1.0).value
    assert gx * k.stochastic_completeness(a, 1.0, t, spec) == pytest.approx(1.0, abs=1e-8)
