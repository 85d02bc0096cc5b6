"""Row-oriented verification records shared by the scans and the CLI."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

COLUMNS = ("suite", "citation", "a", "nu", "z", "zeta", "t_or_r",
           "value_lhs", "value_rhs", "residual", "margin", "pass")


@dataclass(frozen=True)
class CaseRow:
    """One checked case.  ``passed`` is ``None`` for informational rows that
    are reported but do not count toward the verdict.
    """

    suite: str
    citation: str
    a: float = math.nan
    z: float = math.nan
    zeta: float = math.nan
    t_or_r: float = math.nan
    value_lhs: float = math.nan
    value_rhs: float = math.nan
    residual: float = math.nan
    margin: float = math.nan
    passed: bool | None = True

    @property
    def nu(self) -> float:
        return 0.5 * (self.a - 1.0)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["nu"] = self.nu
        d["pass"] = "info" if self.passed is None else ("true" if self.passed else "false")
        del d["passed"]
        return {k: d[k] for k in COLUMNS}


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    rows: tuple[CaseRow, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed is not False for r in self.rows)

    overall_pass = passed

    @property
    def worst_case(self) -> CaseRow | None:
        """The first failure, or else the checked row with the smallest margin."""
        if self.failures:
            return self.failures[0]
        checked = [r for r in self.rows if r.passed and not math.isnan(r.margin)]
        return min(checked, key=lambda r: r.margin) if checked else None

    @property
    def failures(self) -> tuple[CaseRow, ...]:
        return tuple(r for r in self.rows if r.passed is False)

    def __add__(self, other: VerificationReport) -> VerificationReport:
        return VerificationReport(self.suite, self.rows + other.rows)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ("nan" if math.isnan(v) else ("inf" if v > 0 else "-inf"))
    return str(v)


def to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        d = r.as_dict()
        w.writerow([_fmt(d[c]) for c in COLUMNS])
    return buf.getvalue()


def to_json(rows) -> str:
    def clean(v):
        return v if not isinstance(v, float) or math.isfinite(v) else _fmt(v)

    return json.dumps([{k: clean(v) for k, v in r.as_dict().items()} for r in rows], indent=1)
