from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselsg import DomainError
from besselsg import quadrature as q
from besselsg.special_fn import bessel_i_scaled


def test_spec_validation():
    with pytest.raises(DomainError):
        q.QuadratureSpec(rel_tol=0.0)
    with pytest.raises(DomainError):
        q.QuadratureSpec(tail_sigma=5.0)
    with pytest.raises(DomainError):
        q.QuadratureSpec(endpoint_power=-1.0)
    assert q.QuadratureSpec().with_(rel_tol=1e-6).rel_tol == 1e-6


def test_half_gaussian():
    r = q.integrate_weighted(lambda x: np.exp(-x * x), 0.0, width=1.0)
    assert r.value == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-12)


def test_weber_example_by_direct_integrand():
    # int zeta I_0(zeta) e^{-zeta^2} = e^{1/4}/2
    spec = q.QuadratureSpec(rel_tol=1e-12)
    r = q.integrate_weighted(lambda x: bessel_i_scaled(0, x) * np.exp(x - x * x), 1.0, spec, center=0.5, width=1.0)
    assert r.value == pytest.approx(math.exp(0.25) / 2, abs=1e-10)
    assert r.value == pytest.approx(0.6420127, abs=1e-7)


@pytest.mark.parametrize("nu,alpha", [(0.0, 1.0), (-0.5, 0.5), (1.0, 2.0), (-0.9, 0.2), (3.0, 5.0)])
def test_weber(nu, alpha):
    assert q.weber_check(nu, alpha) <= 1e-9


@pytest.mark.parametrize("nu,p,b,c", [(-0.5, 1, 1, 1), (0.0, 1, 1, 1e-3), (1.0, 0.3, 3.0, 0.1), (0.0, 3.0, 2.0, 2.0)])
def test_product_integral(nu, p, b, c):
    assert q.product_integral_check(nu, p, b, c) <= 1e-8


@pytest.mark.parametrize("a", [-0.9, -0.5, 0.0, 0.3, 2.0, 4.5])
def test_weight_endpoint_power(a):
    # int_0^1 zeta^a = 1/(a+1)
    r = q.integrate_weighted(lambda x: np.ones_like(x), a, upper=1.0, width=1.0)
    assert r.value == pytest.approx(1.0 / (a + 1.0), rel=1e-12)


def test_interval_and_vector_forms():
    r = q.integrate_interval(np.sin, 0.0, math.pi)
    assert r.value == pytest.approx(2.0, abs=1e-13)
    v = q.integrate_interval_many(lambda x: np.vstack([np.sin(x), np.cos(x)]), 0.0, math.pi / 2)
    assert v.value == pytest.approx([1.0, 1.0], abs=1e-13)


def test_empty_range():
    with pytest.raises(DomainError):
        q.integrate_weighted(lambda x: x, 0.0, lower=2.0, upper=1.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(-0.9, 4.0), st.floats(0.2, 5.0))
def test_gamma_moments(a, alpha):
    # int zeta^a e^{-alpha zeta^2} = Gamma((a+1)/2) / (2 alpha^{(a+1)/2})
    spec = q.QuadratureSpec(rel_tol=1e-12)
    r = q.integrate_weighted(lambda x: np.exp(-alpha * x * x), a, spec, width=1.0 / math.sqrt(alpha))
    exact = math.gamma(0.5 * (a + 1)) / (2 * alpha ** (0.5 * (a + 1)))
    assert r.value == pytest.approx(exact, rel=1e-10)


def test_tail_safety():
    spec = q.QuadratureSpec(rel_tol=1e-12)
    f = lambda x: np.exp(-(x - 3.0) ** 2 / 2.0)
    a = q.integrate_weighted(f, 1.0, spec, center=3.0, width=1.0).value
    b = q.integrate_weighted(f, 1.0, spec.with_(tail_sigma=20.0), center=3.0, width=1.0).value
    assert abs(a - b) <= 1e-12 * abs(a)
