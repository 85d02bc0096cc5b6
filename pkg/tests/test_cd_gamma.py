from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselsg import DomainError
from besselsg import cd_gamma as cd

NAMES = [p.name for p in cd.PROBES]


def test_gamma1_examples():
    assert cd.gamma1(cd.probe("1"), 1.3) == 0.0
    assert cd.gamma1(cd.probe("z"), 7.0) == 1.0
    assert cd.gamma1(cd.probe("z^2"), 2.0) == 16.0
    with pytest.raises(DomainError):
        cd.gamma1(cd.probe("z"), 0.0)


def test_gamma2_examples():
    assert cd.gamma2(0.0, cd.probe("z"), 1.0) == 0.0
    assert cd.gamma2(1.0, cd.probe("z^2"), 1.0) == 8.0
    with pytest.raises(DomainError):
        cd.gamma2(-1.0, cd.probe("z"), 1.0)


def test_cd_examples():
    for a in (-0.9, -0.5, 0.0, 1.0, 3.0):
        for z in (0.3, 1.0, 4.0):
            r = cd.cd_residual(a, cd.probe("z^2"), z)
            assert r.closed_form == 0.0 and r.direct == pytest.approx(0.0, abs=1e-12)
    assert cd.cd_residual(1.0, cd.probe("z^3"), 1.0).direct == pytest.approx(4.5, abs=1e-12)
    assert cd.cd_residual(-0.5, cd.probe("z^3"), 1.0).direct == pytest.approx(-9.0, abs=1e-12)


def test_probe_registry():
    assert NAMES == ["1", "z", "z^2", "z^3", "z^4", "sin z", "exp(-z)"]
    with pytest.raises(DomainError):
        cd.probe("cos z")
    with pytest.raises(DomainError):
        cd.SmoothProbe("bad", (math.sin, math.sin, math.sin, math.sin, math.sin))


def fd_commutator(a, f, z, h=1e-4):
    """``1/2 B Gamma(f) - Gamma(f, B f)`` from central differences of the callables."""
    g = lambda s: f.d(1, s) ** 2
    bf = lambda s: f.d(2, s) + a / s * f.d(1, s)
    g1 = (g(z + h) - g(z - h)) / (2 * h)
    g2 = (g(z + h) - 2 * g(z) + g(z - h)) / (h * h)
    bf1 = (bf(z + h) - bf(z - h)) / (2 * h)
    return 0.5 * (g2 + a / z * g1) - f.d(1, z) * bf1


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("a", [-0.9, -0.3, 0.0, 1.0, 4.0])
def test_commutator_against_differences(name, a):
    f = cd.probe(name)
    for z in (0.5, 1.0, 3.0):
        exact = cd.gamma2_commutator(a, f, z)
        assert exact == pytest.approx(fd_commutator(a, f, z), abs=1e-5 * max(1.0, abs(exact)))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(NAMES), st.floats(-0.99, 10.0), st.floats(0.05, 10.0))
def test_identity_and_routes(name, a, z):
    f = cd.probe(name)
    r = cd.cd_residual(a, f, z)
    assert r.agreement <= 1e-12
    g2 = cd.gamma2(a, f, z)
    assert cd.gamma2_commutator(a, f, z) == pytest.approx(g2, abs=1e-12 * max(1.0, abs(g2)))
    if a >= 0.0:
        assert r.closed_form >= 0.0


@pytest.mark.parametrize("a", [-0.9, -0.5, -0.1, -1e-3])
def test_cd_fails_below_zero(a):
    assert cd.cd_residual(a, cd.probe("z^3"), 1.0).direct < 0.0
