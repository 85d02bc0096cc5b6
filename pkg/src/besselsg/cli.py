"""Command-line front end.

    besselsg bessel eval --nu 0.5 --z 2
    besselsg kernel eval --a 1 --z 0.5 --zeta 1 --t 0.3
    besselsg semigroup apply --a 1 --datum gaussian --alpha 2 --z 0.5 --t 0.3
    besselsg vmf estimate-kappa --n 3 --rbar 0.6
    besselsg vmf check --n 3 --z 2
    besselsg scan frequency --a 0 --z 1 --kappa 2 --rmin 0.25 --rmax 3 --points 12
    besselsg verify soni --nu -0.5,0,1 --zmax 100
    besselsg verify all --format json --output report.json

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or domain
error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import kernels, monotonicity, semigroup, special_fn, vmf
from .errors import ConvergenceError, DegenerateDatum, DomainError, UndefinedFrequency, UnsupportedKappa
from .report import CaseRow, to_csv, to_json
from .suites import SUITES, TOLERANCES, SuiteConfig

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONVERGENCE = 0, 1, 2, 3


def _floats(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _tol(text: str) -> tuple[str, float]:
    key, sep, val = text.partition("=")
    if not sep or key not in TOLERANCES:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE with KEY in {sorted(TOLERANCES)}")
    return key, float(val)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _datum(args) -> semigroup.InitialDatum:
    if args.datum == "constant":
        return semigroup.constant_datum(args.amp)
    if args.datum == "gaussian":
        return semigroup.gaussian_datum(args.alpha, args.center, args.amp)
    if args.datum == "bump":
        return semigroup.bump_datum(args.center, args.radius, args.amp)
    return semigroup.indicator_datum(args.center - args.radius, args.center + args.radius)


def cmd_bessel_eval(args) -> int:
    r = special_fn.bessel_i(args.nu, args.z)
    out = {"nu": args.nu, "z": args.z, "value": r.value, "abs_error_estimate": r.abs_error_estimate,
           "method": r.method.name, "quotient": float(special_fn.bessel_quotient(args.nu, args.z))
           if args.z > 0 else 0.0}
    _emit(json.dumps(out, indent=1), args.output)
    return EXIT_OK


def cmd_kernel_eval(args) -> int:
    g = kernels.liyau_gap(args.a, args.z, args.zeta, args.t)
    row = CaseRow("kernel-eval", "Li-Yau kernel identity", args.a, args.z, args.zeta, args.t,
                  g.formula, g.derivatives, g.agreement, g.bound - g.formula, g.agreement <= 1e-10)
    text = to_csv([row]).rstrip("\n").split("\n")
    # the kernel value travels in a trailing column so the standard columns stay fixed
    text[0] += ",log_p"
    text[1] += "," + repr(float(kernels.log_heat_kernel(args.a, args.z, args.zeta, args.t)))
    _emit("\n".join(text) + "\n", args.output)
    return EXIT_OK if row.passed else EXIT_FAIL


def cmd_semigroup_apply(args) -> int:
    v = semigroup.evaluate(args.a, _datum(args), args.z, args.t)
    out = {"a": args.a, "z": args.z, "t": args.t, "datum": args.datum, "u": v.u, "log_u": v.log_u,
           "dlog_z": v.dlog_z, "dlog_t": v.dlog_t, "error_estimate": v.error_estimate}
    _emit(json.dumps(out, indent=1), args.output)
    return EXIT_OK


def cmd_vmf_estimate(args) -> int:
    e = vmf.estimate_concentration(args.n, args.rbar)
    out = {"z": e.z, "rbar": e.rbar, "iterations": e.iterations, "residual": e.residual}
    _emit(json.dumps(out, indent=1), args.output)
    return EXIT_OK


def cmd_vmf_check(args) -> int:
    rows = []
    if args.n in (2, 3):
        r = vmf.sphere_integral_check(args.n, args.z)
        rows.append(CaseRow("vmf-check", f"sphere integral (n={args.n})", args.n - 1.0, args.z,
                            residual=r, passed=r <= 1e-9))
    if args.z > 0:
        r = vmf.log_norming_identity_check(args.n, args.z)
        rows.append(CaseRow("vmf-check", f"log-derivative of the norming constant (n={args.n})", args.n - 1.0,
                            args.z, value_lhs=vmf.log_norming_constant(args.n, args.z), residual=r,
                            passed=r <= 1e-5))
    _emit(to_json(rows) if args.format == "json" else to_csv(rows), args.output)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def cmd_scan_frequency(args) -> int:
    if args.points < 2 or not 0.0 < args.rmin < args.rmax:
        raise DomainError("need 0 < rmin < rmax and at least 2 points")
    step = (args.rmax - args.rmin) / (args.points - 1)
    grid = [args.rmin + k * step for k in range(args.points)]
    u = monotonicity.homogeneous_solution(args.a, args.kappa)
    curve, report = monotonicity.poon_scan(args.a, u, args.z, grid)
    lines = ["r,H,I,N"] + [f"{r!r},{h!r},{i!r},{n!r}" for r, h, i, n in zip(curve.r_grid, curve.H, curve.I, curve.N)]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


def _config(args) -> SuiteConfig:
    raw: dict = {}
    if args.config:
        raw = json.loads(Path(args.config).read_text())
        if not isinstance(raw, dict):
            raise DomainError("config file must hold a JSON object")
    keys = {"a": "a_grid", "z": "z_grid", "t": "t_grid", "nu": "nu_grid"}
    kw: dict = {}
    for flag, name in keys.items():
        if flag in raw:
            kw[name] = tuple(float(v) for v in raw[flag])
        if getattr(args, flag) is not None:
            kw[name] = getattr(args, flag)
    for flag in ("zmax", "seed", "workers"):
        if flag in raw:
            kw[flag] = raw[flag]
        if getattr(args, flag) is not None:
            kw[flag] = getattr(args, flag)
    tols = dict(raw.get("tolerances", {}))
    tols.update(dict(args.tol or ()))
    kw["tolerances"] = tols
    try:
        return SuiteConfig(**kw)
    except (TypeError, ValueError) as exc:
        raise DomainError(str(exc)) from exc


def cmd_verify(args) -> int:
    cfg = _config(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rows = []
    ok = True
    for name in names:
        rep = SUITES[name](cfg)
        rows.extend(rep.rows)
        ok = ok and rep.passed
        info = sum(r.passed is None for r in rep.rows)
        print(f"{name}: {'PASS' if rep.passed else 'FAIL'} ({len(rep.rows)} rows, "
              f"{len(rep.failures)} failed, {info} info)", file=sys.stderr)
    fmt = args.format
    if fmt is None:
        fmt = "json" if args.output and args.output.endswith(".json") else "csv"
    _emit(to_json(rows) if fmt == "json" else to_csv(rows), args.output)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="besselsg", description="Bessel quotient and Bessel semigroup numerics.")
    sub = ap.add_subparsers(dest="group", required=True)

    def out(p, fmt=False):
        p.add_argument("--output", help="write here instead of stdout")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"))

    b = sub.add_parser("bessel").add_subparsers(dest="cmd", required=True)
    p = b.add_parser("eval", help="I_nu(z) with error estimate and method")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--z", type=float, required=True)
    out(p)
    p.set_defaults(func=cmd_bessel_eval)

    k = sub.add_parser("kernel").add_subparsers(dest="cmd", required=True)
    p = k.add_parser("eval", help="kernel value and both Li-Yau routes as CSV")
    for name in ("a", "z", "zeta", "t"):
        p.add_argument(f"--{name}", type=float, required=True)
    out(p)
    p.set_defaults(func=cmd_kernel_eval)

    s = sub.add_parser("semigroup").add_subparsers(dest="cmd", required=True)
    p = s.add_parser("apply", help="evolve an initial datum")
    for name in ("a", "z", "t"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--datum", choices=("constant", "gaussian", "bump", "indicator"), default="gaussian")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--center", type=float, default=0.0)
    p.add_argument("--radius", type=float, default=0.5)
    p.add_argument("--amp", type=float, default=1.0)
    out(p)
    p.set_defaults(func=cmd_semigroup_apply)

    v = sub.add_parser("vmf").add_subparsers(dest="cmd", required=True)
    p = v.add_parser("estimate-kappa", help="concentration from mean resultant length")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rbar", type=float, required=True)
    out(p)
    p.set_defaults(func=cmd_vmf_estimate)
    p = v.add_parser("check", help="norming-constant identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", type=float, required=True)
    out(p, fmt=True)
    p.set_defaults(func=cmd_vmf_check)

    sc = sub.add_parser("scan").add_subparsers(dest="cmd", required=True)
    p = sc.add_parser("frequency", help="H, I, N along r for a homogeneous field")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--z", type=float, default=0.0)
    p.add_argument("--kappa", type=int, default=2)
    p.add_argument("--rmin", type=float, default=0.25)
    p.add_argument("--rmax", type=float, default=3.0)
    p.add_argument("--points", type=int, default=12)
    out(p)
    p.set_defaults(func=cmd_scan_frequency)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=[*SUITES, "all"])
    p.add_argument("--a", type=_floats)
    p.add_argument("--z", type=_floats)
    p.add_argument("--t", type=_floats)
    p.add_argument("--nu", type=_floats)
    p.add_argument("--zmax", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--tol", type=_tol, action="append", metavar="KEY=VALUE")
    p.add_argument("--config", help="JSON file with the same keys as the flags")
    out(p, fmt=True)
    p.set_defaults(func=cmd_verify)
    return ap


_NUMERIC = re.compile(r"^-[\d.]")


def _join_negative(argv: list[str]) -> list[str]:
    # argparse reads "-0.5,0,1" as an option; attach such values to their flag
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NUMERIC.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv=None) -> int:
    ap = build_parser()
    argv = _join_negative(list(sys.argv[1:] if argv is None else argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (DomainError, UnsupportedKappa, UndefinedFrequency, DegenerateDatum, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


def main() -> None:
    sys.exit(run())
