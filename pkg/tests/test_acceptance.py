"""Acceptance criteria, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines go straight to the
terminal) or ``python tests/test_acceptance.py``.  Thresholds are pinned here
rather than read from the package defaults.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
import pytest

from besselsg import cd_gamma, kernels, special_fn, suites, vmf
from besselsg.suites import SuiteConfig

TOL = {
    "stochastic-completeness": 1e-9,
    "chapman-kolmogorov": 1e-8,
    "weber": 1e-9,
    "reflection-a0": 1e-12,
    "liyau-kernel": 1e-10,
    "nasell": 1e-12,
    "asymptotic-tail": 2e-3,
    "liyau-ledger": 1e-6,
    "gterm-zero": 1e-10,
    "energy-fd": 1e-4,
    "frequency": 1e-6,
    "kimura": 1e-12,
    "cd": 1e-12,
    "sphere-integral": 1e-9,
    "vmf-derivative": 1e-5,
    "vmf-roundtrip": 1e-8,
}
CFG = SuiteConfig(tolerances=dict(TOL))
SUB_SHARP_NU = (-0.9, -0.75, -0.6)
SHARP_NU = (-0.5, -0.25, 0.0, 1.0)


@lru_cache(maxsize=None)
def report(name):
    return suites.SUITES[name](CFG)


def rows(name, citation=None):
    return [r for r in report(name).rows if citation is None or r.citation.startswith(citation)]


def c1():
    r = max(row.residual for row in rows("stochastic-completeness"))
    return r <= TOL["stochastic-completeness"], f"max |int p - 1| = {r:.2e} over the default grid"


def c2():
    rs = [row.residual for row in rows("chapman-kolmogorov")]
    r = max(rs)
    return len(rs) == 50 and r <= TOL["chapman-kolmogorov"], f"{len(rs)} random cases, max rel residual {r:.2e}"


def c3():
    rs = rows("weber")
    nus = sorted({row.nu for row in rs})
    r = max(row.residual for row in rs)
    ok = r <= TOL["weber"] and nus[0] == -0.9 and nus[-1] == 3.0
    return ok, f"nu in [{nus[0]}, {nus[-1]}], alpha in [0.2, 5]: max rel error {r:.2e}"


def c4():
    r = max(row.residual for row in rows("reflection-a0"))
    return r <= TOL["reflection-a0"], f"max rel residual {r:.2e}"


def c5():
    tol = TOL["liyau-kernel"]
    worst_agree, worst_boundary, strict_ok = 0.0, 0.0, True
    for a in CFG.a_grid:
        for z in CFG.z_grid:
            for zeta in CFG.z_grid:
                for t in CFG.t_grid:
                    g = kernels.liyau_gap(a, z, zeta, t)
                    worst_agree = max(worst_agree, g.agreement)
                    if z == 0.0:
                        exact = (a + 1) / (2 * t) - zeta * zeta / (4 * t * t)
                        worst_boundary = max(worst_boundary, abs(g.formula - exact) / max(1.0, abs(exact)))
                    elif zeta > 0.0 and a >= 0.0:
                        # the margin is strict when its logarithm is finite
                        strict_ok = strict_ok and g.log_margin > -math.inf and g.formula <= g.bound
    ok = worst_agree <= tol and worst_boundary <= tol and strict_ok
    return ok, (f"route agreement {worst_agree:.2e}, boundary value error {worst_boundary:.2e}, "
                f"strict bound {'holds' if strict_ok else 'violated'}")


def c6():
    grid = np.geomspace(1e-3, 100.0, 400)
    below = all(np.all(special_fn.quotient_complement(nu, grid) > 0.0) for nu in SHARP_NU)
    tops = {nu: float(np.max(special_fn.bessel_quotient(nu, grid))) for nu in SUB_SHARP_NU}
    nasell = float(np.max(special_fn.nasell_residual(np.linspace(0.1, 20.0, 200))))
    ok = below and all(v > 1.0 for v in tops.values()) and nasell <= TOL["nasell"]
    return ok, (f"y < 1 for nu >= -1/2: {below}; max y below the sharp range "
                f"{', '.join(f'{v:.4f}' for v in tops.values())}; Nasell residual {nasell:.2e}")


def c7():
    grid = np.geomspace(1e-3, 1e3, 300)
    increasing = all(np.all(np.diff(special_fn.log_quotient_complement(nu, grid)) < 0.0) for nu in SHARP_NU)
    unimodal = True
    for nu in SUB_SHARP_NU:
        s = np.sign(np.diff(special_fn.bessel_quotient(nu, grid)))
        unimodal = unimodal and s[0] > 0 and s[-1] < 0 and np.count_nonzero(s[1:] != s[:-1]) == 1
        unimodal = unimodal and special_fn.quotient_supremum(nu)[1] > 1.0
    dev = max(abs(float(special_fn.asymptotic_tail(nu, 1e3)) - (nu + 0.5)) for nu in SUB_SHARP_NU + SHARP_NU)
    ok = increasing and unimodal and dev <= TOL["asymptotic-tail"]
    return ok, f"strictly increasing: {increasing}; single interior maximum > 1: {unimodal}; tail deviation {dev:.2e}"


def c8():
    ledger = [r for r in rows("liyau", "Li-Yau with remainder")]
    worst = max(r.residual for r in ledger)
    strict = [r for r in rows("liyau", "sharp Li-Yau") if r.a >= 0.0]
    boundary = rows("liyau", "Li-Yau at the boundary")
    ok = (worst <= TOL["liyau-ledger"] and strict and all(r.passed for r in strict)
          and boundary and all(r.passed for r in boundary))
    return ok, (f"ledger max {worst:.2e} over {len(ledger)} cases; strict rows {sum(bool(r.passed) for r in strict)}"
                f"/{len(strict)}; boundary rows {sum(bool(r.passed) for r in boundary)}/{len(boundary)}")


def harnack_randomized():
    half = rows("harnack", "sharp Harnack")
    ext = rows("extension-harnack", "sharp extension Harnack")
    return half, ext


def c9():
    half, ext = harnack_randomized()
    randomized = len(half) == 100 and len(ext) == 100 and all(r.value_lhs < 1.0 for r in half + ext)
    # the probe exactly as stated: phi = 1, exponent lowered by 0.05, s/t = 1e-3
    literal = [v for _, label, v in suites.sharpness_probes() + suites.sharpness_probes(extension=True)
               if label == "constant datum"]
    ok = randomized and all(v > 1.0 for v in literal)
    return ok, (f"randomized ratios < 1: {randomized}; constant-datum probe max ratio {max(literal):.3e} "
                f"(equals (s/t)^(e-0.05), cannot exceed 1)")


def c10():
    rs = rows("struwe")
    decreasing = [r for r in rs if r.citation == "energy monotonicity"]
    gterm = rows("struwe", "curvature term sign")
    gzero = rows("struwe", "curvature term vanishes")
    fd = rows("struwe", "energy derivative cross-check")
    strict = [r for r in decreasing if r.z > 0]
    ok = (all(r.margin > 0 for r in strict) and all(r.passed for r in decreasing)
          and all(r.value_lhs < 0 for r in gterm) and max(r.residual for r in gzero) <= TOL["gterm-zero"]
          and max(r.residual for r in fd) <= TOL["energy-fd"])
    return ok, (f"{len(strict)} strict decreases, {len(decreasing) - len(strict)} boundary steps; "
                f"max |gterm| at z=0 {max(r.residual for r in gzero):.1e}; "
                f"dE/dt vs difference {max(r.residual for r in fd):.1e}")


def c11():
    homog = rows("poon", "frequency of a degree")
    dev = max(r.residual for r in homog)
    mixed = rows("poon", "frequency of a mixed field")
    away = [r for r in rows("poon", "frequency monotonicity") if r.z == 1.0 and r.a >= 0.0]
    ok = dev <= TOL["frequency"] and all(r.margin > 0 for r in mixed) and all(r.margin > 0 for r in away)
    return ok, f"|N - kappa/2| <= {dev:.1e}; mixed field rises {len(mixed)} steps; z = 1 rises {len(away)} steps"


def c12():
    equiv = rows("kimura", "Kimura kernel equivalence")
    ops = rows("kimura", "operator intertwining")
    worst = max(r.residual for r in equiv + ops)
    ok = worst <= TOL["kimura"] and any(r.a < 0 for r in equiv) and all(r.passed for r in rows("kimura"))
    return ok, f"max residual {worst:.2e}, including a in (-1, 0)"


def c13():
    rs = rows("cd", "curvature-dimension identity")
    worst = max(r.residual for r in rs)
    nonneg = all(r.value_lhs >= -TOL["cd"] * max(1.0, abs(r.value_rhs)) for r in rs if r.a >= 0.0)
    negative = all(cd_gamma.cd_residual(a, cd_gamma.probe("z^3"), 1.0).direct < 0.0 for a in CFG.a_grid if a < 0)
    ok = worst <= TOL["cd"] and nonneg and negative
    return ok, f"identity residual {worst:.1e}; nonnegative for a >= 0: {nonneg}; z^3 negative for a < 0: {negative}"


def c14():
    sphere = max(vmf.sphere_integral_check(n, z) for n in (2, 3) for z in (0.0, 0.5, 1.0, 2.0, 3.0, 10.0))
    deriv = max(vmf.log_norming_identity_check(n, float(z)) for n in (2, 3, 4, 7) for z in np.geomspace(0.1, 20, 15))
    trip = 0.0
    for n in (2, 3, 4, 7):
        for z in (0.1, 1.0, 5.0, 20.0):
            trip = max(trip, abs(vmf.estimate_concentration(n, float(special_fn.bessel_quotient(0.5 * n - 1, z))).z - z))
    langevin = vmf.estimate_concentration(3, 1 / math.tanh(2.0) - 0.5).z
    ok = (sphere <= TOL["sphere-integral"] and deriv <= TOL["vmf-derivative"] and trip <= TOL["vmf-roundtrip"]
          and abs(langevin - 2.0) <= 1e-6)
    return ok, (f"sphere {sphere:.1e}; derivative {deriv:.1e}; round trip {trip:.1e}; "
                f"Langevin z = {langevin:.10f}")


CRITERIA = {
    1: ("stochastic completeness", c1),
    2: ("Chapman-Kolmogorov", c2),
    3: ("Weber integral", c3),
    4: ("reflection at a = 0", c4),
    5: ("Li-Yau kernel gap", c5),
    6: ("Soni and Nasell bounds", c6),
    7: ("quotient monotonicity and tail", c7),
    8: ("semigroup Li-Yau", c8),
    9: ("Harnack and exponent sharpness", c9),
    10: ("Struwe energy", c10),
    11: ("Poon frequency", c11),
    12: ("Kimura equivalence", c12),
    13: ("curvature-dimension dichotomy", c13),
    14: ("von Mises-Fisher chain", c14),
}
# With phi = 1 the sharpness ratio is (s/t)^(e - 0.05) < 1 identically; see test_exponent_sharpness_witness.
UNATTAINABLE = {9}


def evaluate(n):
    title, fn = CRITERIA[n]
    ok, detail = fn()
    return ok, f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"


def _marks(n):
    if n in UNATTAINABLE:
        return pytest.mark.xfail(strict=True, reason="literal probe with phi = 1 cannot exceed 1")
    return ()


@pytest.mark.parametrize("n", [pytest.param(n, marks=_marks(n)) for n in CRITERIA])
def test_criterion(n, capsys):
    ok, line = evaluate(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def test_exponent_sharpness_witness():
    # a datum concentrated at the boundary decays like t^{-(a+1)/2}, so lowering the exponent breaks the bound
    half, ext = harnack_randomized()
    assert all(r.value_lhs < 1.0 for r in half + ext)
    concentrated = [v for _, label, v in suites.sharpness_probes() + suites.sharpness_probes(extension=True)
                    if label == "concentrated datum"]
    assert len(concentrated) == 8 and min(concentrated) > 1.0


def test_literal_probe_matches_its_closed_form():
    for a, label, v in suites.sharpness_probes():
        if label == "constant datum":
            assert v == pytest.approx(1e-3 ** (0.5 * (a + 1) - 0.05), rel=1e-9)


if __name__ == "__main__":
    for n in CRITERIA:
        print(evaluate(n)[1])
