"""Report records produced by predicate and inequality checkers.

Every checker returns one of these instead of a bare bool, so that the
harness can serialize the worst gap and the witness that attains it.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class PredicateReport:
    """Outcome of a sampled structural predicate (super-additivity etc.)."""

    holds: bool
    worst_violation: float
    witness: tuple
    name: str = ""
    n_evaluated: int = 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "worst_violation": self.worst_violation,
            "witness": to_jsonable(self.witness),
            "n_evaluated": self.n_evaluated,
        }


@dataclass(frozen=True)
class IneqReport:
    """One inequality check: ``lhs <= rhs`` in the scalar or Loewner sense.

    ``gap_min_eig`` is the smallest eigenvalue of ``rhs - lhs`` (or the plain
    difference for scalar checks).  The verdict is ``holds`` exactly when
    ``gap_min_eig >= -tolerance_used``, unless the instance was degenerate.
    """

    lhs_tag: str
    rhs_tag: str
    gap_min_eig: float
    tolerance_used: float
    verdict: Verdict
    witness: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @classmethod
    def from_gap(cls, lhs_tag, rhs_tag, gap, tolerance, witness=None, details=None):
        gap = float(gap)
        tolerance = float(tolerance)
        if math.isnan(gap):
            verdict = Verdict.VIOLATED
        else:
            verdict = Verdict.HOLDS if gap >= -tolerance else Verdict.VIOLATED
        return cls(lhs_tag, rhs_tag, gap, tolerance, verdict,
                   witness or {}, details or {})

    @classmethod
    def degenerate(cls, lhs_tag, rhs_tag, reason, witness=None, details=None):
        details = dict(details or {})
        details["reason"] = reason
        return cls(lhs_tag, rhs_tag, float("nan"), 0.0, Verdict.DEGENERATE,
                   witness or {}, details)

    def to_dict(self, include_witness: bool = True) -> dict:
        out = {
            "lhs": self.lhs_tag,
            "rhs": self.rhs_tag,
            "gap": _finite_or_str(self.gap_min_eig),
            "tolerance": self.tolerance_used,
            "verdict": self.verdict.value,
            "details": to_jsonable(self.details),
        }
        if include_witness:
            out["witness"] = to_jsonable(self.witness)
        return out


def combine(reports, lhs_tag: str, rhs_tag: str, details=None) -> IneqReport:
    """Merge several reports into one, keeping the worst (most negative) gap."""
    reports = list(reports)
    live = [r for r in reports if r.verdict is not Verdict.DEGENERATE]
    if not live:
        return IneqReport.degenerate(lhs_tag, rhs_tag, "all parts degenerate",
                                     details=details)
    failing = [r for r in live if r.verdict is Verdict.VIOLATED]
    pool = failing or live
    worst = min(pool, key=lambda r: r.gap_min_eig + r.tolerance_used)
    merged = dict(details or {})
    merged["parts"] = [{"inequality": f"{r.lhs_tag} <= {r.rhs_tag}", "gap": r.gap_min_eig,
                        "verdict": r.verdict.value, "details": r.details} for r in reports]
    verdict = Verdict.VIOLATED if failing else Verdict.HOLDS
    return IneqReport(lhs_tag, rhs_tag, worst.gap_min_eig, worst.tolerance_used,
                      verdict, worst.witness, merged)


def _finite_or_str(x):
    x = float(x)
    return x if math.isfinite(x) else str(x)


def serialize_matrix(a) -> list:
    """Row-major list of rows of ``[re, im]`` pairs."""
    a = np.asarray(a)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def to_jsonable(obj: Any) -> Any:
    """Convert numpy scalars/arrays (recursively) into JSON-friendly values."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2:
            return serialize_matrix(obj)
        if np.iscomplexobj(obj):
            return [[float(z.real), float(z.imag)] for z in obj.ravel()]
        return [_finite_or_str(v) for v in obj.ravel()]
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _finite_or_str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    return obj
