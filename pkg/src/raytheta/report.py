"""Per-identity verification outcomes, serializable for the CLI."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .qseries import QSeries, equals_to_order


@dataclass(frozen=True)
class VerificationReport:
    name: str
    params: dict
    trunc: Fraction
    passed: bool
    first_mismatch: Optional[tuple[Fraction, int, int]]
    wall_time_ms: float
    notes: str = ""

    def to_json_dict(self) -> dict:
        mism = None
        if self.first_mismatch is not None:
            e, lhs, rhs = self.first_mismatch
            mism = {"exponent": [e.numerator, e.denominator], "lhs": lhs, "rhs": rhs}
        out = {
            "name": self.name,
            "params": {k: _jsonable(v) for k, v in sorted(self.params.items())},
            "trunc": [self.trunc.numerator, self.trunc.denominator],
            "pass": self.passed,
            "first_mismatch": mism,
            "wall_time_ms": round(self.wall_time_ms, 3),
        }
        if self.notes:
            out["notes"] = self.notes
        return out

    def text_row(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ""
        if self.first_mismatch is not None:
            e, lhs, rhs = self.first_mismatch
            extra = f"  first mismatch at q^({e}): {lhs} vs {rhs}"
        ptxt = " ".join(f"{k}={_jsonable(v)}" for k, v in sorted(self.params.items()))
        return f"{status}  {self.name}  [{ptxt}] trunc={self.trunc}{extra}"


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def compare_series_report(
    name: str,
    params: dict,
    lhs: QSeries,
    rhs: QSeries,
    order,
    started: float,
    notes: str = "",
) -> VerificationReport:
    order = Fraction(order)
    ok, mismatch = equals_to_order(lhs, rhs, order)
    return VerificationReport(
        name=name,
        params=params,
        trunc=order,
        passed=ok,
        first_mismatch=mismatch,
        wall_time_ms=(time.perf_counter() - started) * 1000.0,
        notes=notes,
    )
