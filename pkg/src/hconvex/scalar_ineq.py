"""Checkers for scalar and vector h-convexity inequalities.

Vector arguments live in a finite-dimensional real normed space.  A
:class:`~hconvex.hclass.ScalarFunction` flagged ``even`` acts on vectors
radially, v -> f(||v||); non-even scalar functions act on 1-d points only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import DegenerateError, DomainError
from .hclass import (EVEN, MULTIPLICATIVE, STRICTLY_POSITIVE, SUPERADDITIVE, HFunction,
                     ScalarFunction)
from .quadrature import DEFAULT_TOL, QuadratureResult, integrate01
from .reports import IneqReport, combine

SCALAR_TOL = 1e-10
LAMBDA_CLAMP_TOL = 1e-12
ENDPOINT_NUDGE = 1e-9

NORM_KINDS = ("euclidean", "one", "infinity")


@dataclass(frozen=True)
class VectorPoint:
    coords: np.ndarray
    norm_kind: str = "euclidean"

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coords, dtype=float)).copy()
        if c.ndim != 1 or c.size < 1:
            raise ValueError("a point needs dimension >= 1")
        if self.norm_kind not in NORM_KINDS:
            raise ValueError(f"norm_kind must be one of {NORM_KINDS}")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def dim(self) -> int:
        return self.coords.size

    def norm(self) -> float:
        return float(norm(self.coords, self.norm_kind))


@dataclass(frozen=True)
class WeightVector:
    weights: np.ndarray
    probability: bool = True

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.weights, dtype=float)).copy()
        if w.size < 1 or np.any(w < 0):
            raise ValueError("weights must be a non-empty non-negative vector")
        if self.probability and abs(float(w.sum()) - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {w.sum()!r}, expected 1")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return self.weights.size


def norm(v: np.ndarray, kind: str = "euclidean") -> np.ndarray:
    """Norm along the last axis."""
    v = np.asarray(v, dtype=float)
    if kind == "euclidean":
        return np.sqrt(np.sum(v * v, axis=-1))
    if kind == "one":
        return np.sum(np.abs(v), axis=-1)
    if kind == "infinity":
        return np.max(np.abs(v), axis=-1)
    raise ValueError(f"unknown norm kind {kind!r}")


Point = Union[VectorPoint, float, Sequence[float], np.ndarray]


def _point(p: Point, norm_kind: str = "euclidean") -> VectorPoint:
    return p if isinstance(p, VectorPoint) else VectorPoint(p, norm_kind)


def lift(f, dim: int, norm_kind: str = "euclidean") -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized evaluator of f on an array of points with shape (k, dim)."""
    if isinstance(f, ScalarFunction):
        if EVEN in f.flags:
            return lambda pts: f(norm(pts, norm_kind))
        if dim != 1:
            raise ValueError(f"{f.name} is not even, so it only acts on 1-d points")
        return lambda pts: f(np.asarray(pts, dtype=float)[..., 0])
    return lambda pts: np.asarray(f(np.asarray(pts, dtype=float)), dtype=float)


def _fname(f) -> str:
    return getattr(f, "name", getattr(f, "__name__", "f"))


def _scalar_report(lhs, rhs, lhs_tag, rhs_tag, witness_at, details=None) -> IneqReport:
    lhs, rhs = np.atleast_1d(lhs), np.atleast_1d(rhs)
    r = rhs - lhs
    scale = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    k = int(np.argmin(r / scale))
    return IneqReport.from_gap(lhs_tag, rhs_tag, r[k], SCALAR_TOL * scale[k],
                               witness_at(k), details)


def segment_breakpoints(start: np.ndarray, direction: np.ndarray, norm_kind: str) -> list:
    """Parameters t in (0, 1) where ||start + t * direction|| may fail to be smooth."""
    u, v = np.asarray(start, dtype=float), np.asarray(direction, dtype=float)
    out = []
    vv = float(v @ v)
    if vv > 0:
        out.append(-float(u @ v) / vv)
    if norm_kind in ("one", "infinity"):
        nz = v != 0
        out.extend((-u[nz] / v[nz]).tolist())
    if norm_kind == "infinity" and u.size > 1:
        i, j = np.triu_indices(u.size, 1)
        for sgn in (1.0, -1.0):
            dv = v[i] - sgn * v[j]
            du = u[i] - sgn * u[j]
            ok = dv != 0
            out.extend((-du[ok] / dv[ok]).tolist())
    return sorted(t for t in out if 0.0 < t < 1.0)


# ---------------------------------------------------------------------------
# characterizations


def check_char1(f, h: HFunction, x: Point, y: Point, trials: int = 500, seed=0) -> IneqReport:
    """The restriction t -> f(tx + (1-t)y) is h-convex on [0, 1]."""
    x = _point(x)
    y = _point(y, x.norm_kind)
    F = lift(f, x.dim, x.norm_kind)
    rng = np.random.default_rng(seed)
    a = rng.uniform(np.nextafter(0.0, 1.0), 1.0, trials)
    t1, t2 = rng.uniform(0.0, 1.0, trials), rng.uniform(0.0, 1.0, trials)

    def fxy(t):
        return F(t[:, None] * x.coords + (1 - t)[:, None] * y.coords)

    lhs = fxy(a * t1 + (1 - a) * t2)
    rhs = h(a) * fxy(t1) + h(1 - a) * fxy(t2)
    return _scalar_report(
        lhs, rhs, "f_xy(a t1 + (1-a) t2)", "h(a) f_xy(t1) + h(1-a) f_xy(t2)",
        lambda k: {"x": x.coords, "y": y.coords, "alpha": a[k], "t1": t1[k], "t2": t2[k]},
        {"f": _fname(f), "h": h.name})


def check_char3(f, h: HFunction, x: Point, y: Point, s_max: float = 2.0, trials: int = 200,
                seed=0) -> IneqReport:
    """Extrapolation form f((1+s)x - sy) >= h(1+s) f(x) - h(s) f(y), s > 0."""
    if not h.has(MULTIPLICATIVE, STRICTLY_POSITIVE):
        raise ValueError(f"{h.name} must be flagged multiplicative and strictly positive")
    x = _point(x)
    y = _point(y, x.norm_kind)
    F = lift(f, x.dim, x.norm_kind)
    rng = np.random.default_rng(seed)
    s = rng.uniform(np.nextafter(0.0, 1.0), s_max, trials)
    pts = (1 + s)[:, None] * x.coords - s[:, None] * y.coords
    try:
        lhs_val = F(pts)
    except DomainError as exc:
        raise DomainError(f"extrapolated point leaves the domain: {exc}") from exc
    fx, fy = F(x.coords[None, :])[0], F(y.coords[None, :])[0]
    bound = h(1 + s) * fx - h(s) * fy
    return _scalar_report(
        bound, lhs_val, "h(1+s) f(x) - h(s) f(y)", "f((1+s)x - sy)",
        lambda k: {"x": x.coords, "y": y.coords, "s": s[k]},
        {"f": _fname(f), "h": h.name})


def check_even_chain(f, h: HFunction, x: Point, y: Point, t: float) -> IneqReport:
    """Both inequalities of the even-function chain at a single t in (0, 1)."""
    if isinstance(f, ScalarFunction) and EVEN not in f.flags:
        raise ValueError(f"{f.name} is not flagged even")
    if not 0.0 < t < 1.0:
        raise ValueError("t must lie in (0, 1)")
    x = _point(x)
    y = _point(y, x.norm_kind)
    F = lift(f, x.dim, x.norm_kind)
    ev = lambda v: float(F(np.asarray(v)[None, :])[0])
    c = float(h(t) + h(1 - t))
    witness = {"x": x.coords, "y": y.coords, "t": t}
    if c == 0.0:
        return IneqReport.degenerate("lower", "middle", "h(t) + h(1-t) = 0", witness)
    lower = (ev((1 - 2 * t) * x.coords) + ev((2 * t - 1) * y.coords)) / c
    middle = ev((1 - t) * x.coords + t * y.coords) + ev(t * x.coords + (1 - t) * y.coords)
    upper = c * (ev(x.coords) + ev(y.coords))
    lo = _scalar_report(lower, middle, "[f((1-2t)x) + f((2t-1)y)] / [h(t)+h(1-t)]",
                        "f((1-t)x+ty) + f(tx+(1-t)y)", lambda k: witness)
    up = _scalar_report(middle, upper, "f((1-t)x+ty) + f(tx+(1-t)y)",
                        "[h(t)+h(1-t)] [f(x)+f(y)]", lambda k: witness)
    return combine([lo, up], "lower", "upper",
                   {"lower": lower, "middle": middle, "upper": upper,
                    "gap_lower": lo.gap_min_eig, "gap_upper": up.gap_min_eig})


def _certified_report(lhs_tag, rhs_tag, gap, err, witness, details) -> IneqReport:
    """Pass only when the gap clears the quadrature error bound."""
    details = dict(details)
    details.update(raw_gap=gap, quadrature_error=err)
    return IneqReport.from_gap(lhs_tag, rhs_tag, gap - err, 0.0, witness, details)


def _require_closed_unit_interval(h: HFunction):
    if not np.all(h.contains([0.0, 1.0])):
        raise DomainError(f"{h.name} must be finite on [0, 1] for the integral forms")


def check_even_integral(f, h: HFunction, x: Point, y: Point,
                        tol: float = DEFAULT_TOL) -> IneqReport:
    """Integrated even-function bounds; the h(1)-normalized form needs super-additive h."""
    _require_closed_unit_interval(h)
    x = _point(x)
    y = _point(y, x.norm_kind)
    F = lift(f, x.dim, x.norm_kind)
    kind = x.norm_kind
    q1 = integrate01(lambda t: F(t[:, None] * x.coords) + F(t[:, None] * y.coords), tol)
    bps = segment_breakpoints(y.coords, x.coords - y.coords, kind)
    q2 = integrate01(
        lambda t: (h(t) + h(1 - t)) * F(t[:, None] * x.coords + (1 - t)[:, None] * y.coords),
        tol, breakpoints=bps)
    witness = {"x": x.coords, "y": y.coords, "norm": kind}
    base = {"f": _fname(f), "h": h.name, "int_f_tx_plus_f_ty": q1.value,
            "int_weighted_segment": q2.value}
    parts = [_certified_report(
        "(1/2) int [f(tx)+f(ty)]", "int [h(t)+h(1-t)] f(tx+(1-t)y)",
        q2.value - 0.5 * q1.value, q2.abs_error_bound + 0.5 * q1.abs_error_bound,
        witness, base)]
    if SUPERADDITIVE in h.flags:
        qh = integrate01(h, tol)
        h1 = float(h(1.0))
        denom = 2.0 * h1 * qh.value
        if denom <= 0:
            parts.append(IneqReport.degenerate("normalized integral", "f(x)+f(y)",
                                               "h(1) * int h = 0", witness))
        else:
            lhs = q1.value / denom
            err = q1.abs_error_bound / denom + q1.value * qh.abs_error_bound / (2 * h1 * qh.value ** 2)
            fx = float(F(x.coords[None, :])[0])
            fy = float(F(y.coords[None, :])[0])
            parts.append(_certified_report(
                "int [f(tx)+f(ty)] / (2 h(1) int h)", "f(x) + f(y)",
                fx + fy - lhs, err, witness, dict(base, int_h=qh.value)))
    return combine(parts, "integral forms", "bounds",
                   {"checked_normalized_form": SUPERADDITIVE in h.flags})


def check_hh_norm(x: Point, y: Point, p: float, tol: float = DEFAULT_TOL) -> IneqReport:
    """Hermite-Hadamard type bounds for the P-function ||v||^p, 0 < p < 1."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    x = _point(x)
    y = _point(y, x.norm_kind)
    kind = x.norm_kind
    d = y.coords - x.coords
    q = integrate01(lambda t: norm(x.coords + t[:, None] * d, kind) ** p, tol,
                    breakpoints=segment_breakpoints(x.coords, d, kind))
    s = x.norm() ** p + y.norm() ** p
    lower = s / (4.0 * (p + 1.0))
    witness = {"x": x.coords, "y": y.coords, "p": p, "norm": kind}
    details = {"lower": lower, "integral": q.value, "upper": s}
    lo = _certified_report("(|x|^p+|y|^p) / (4(p+1))", "int |(1-t)x+ty|^p",
                           q.value - lower, q.abs_error_bound, witness, details)
    up = _certified_report("int |(1-t)x+ty|^p", "|x|^p+|y|^p",
                           s - q.value, q.abs_error_bound, witness, details)
    return combine([lo, up], "lower", "upper", details)


# ---------------------------------------------------------------------------
# Jensen-Mercer family


def lambda_of(z: float, x: float, y: float) -> float:
    """The lambda in [0, 1] with z = lambda x + (1 - lambda) y."""
    if x == y:
        raise DegenerateError("x == y: the convex weight is not determined")
    lam = (y - z) / (y - x)
    if lam < -LAMBDA_CLAMP_TOL or lam > 1.0 + LAMBDA_CLAMP_TOL:
        raise DomainError(f"z={z} is not between x={x} and y={y}")
    return float(min(1.0, max(0.0, lam)))


def _f_scalar(f):
    return lambda v: float(f(v))


def _h_ok(h: HFunction, lam: float) -> bool:
    return bool(np.all(h.contains([lam, 1.0 - lam])))


def check_mercer_lemma(f, h: HFunction, x: float, y: float, z: float) -> IneqReport:
    """f(x + y - z) <= [h(l) + h(1-l)][f(x) + f(y)] - f(z) with z = l x + (1-l) y."""
    if not 0.0 < x <= y:
        raise DomainError("need 0 < x <= y")
    if not x <= z <= y:
        raise DomainError("z must lie in [x, y]")
    fs = _f_scalar(f)
    lam = lambda_of(z, x, y)
    details = {"f": _fname(f), "h": h.name, "lambda": lam}
    if not _h_ok(h, lam):
        nudge = ENDPOINT_NUDGE * (y - x)
        z = z + nudge if lam == 1.0 else z - nudge
        lam = lambda_of(z, x, y)
        details.update(perturbed_z=z, perturbation=nudge, lambda_=lam)
    witness = {"x": x, "y": y, "z": z}
    lhs = fs(x + y - z)
    coef = float(h(lam) + h(1.0 - lam))
    parts = [_scalar_report(lhs, coef * (fs(x) + fs(y)) - fs(z), "f(x+y-z)",
                            "[h(l)+h(1-l)][f(x)+f(y)] - f(z)", lambda k: witness, details)]
    if SUPERADDITIVE in h.flags:
        parts.append(_scalar_report(lhs, float(h(1.0)) * (fs(x) + fs(y)) - fs(z), "f(x+y-z)",
                                    "h(1)[f(x)+f(y)] - f(z)", lambda k: witness, details))
    return combine(parts, "f(x+y-z)", "Mercer lemma bounds", details)


def _is_identity(h: HFunction) -> bool:
    if h.name == "h:id":
        return True
    t = np.linspace(0.0, 1.0, 17)
    return bool(np.all(h.contains(t))) and bool(np.allclose(h(t), t, rtol=0, atol=1e-15))


def check_mercer_h(f, h: HFunction, xs: Sequence[float], w) -> IneqReport:
    """Jensen-Mercer bound for h-convex f on 0 < x_1 <= ... <= x_n.

    Also checks the h(1) form (h super-additive with sum h(t_j) <= 1), the
    unit form (h also multiplicative), and the classical bound when h(t) = t.
    """
    xs = np.asarray(xs, dtype=float)
    w = w if isinstance(w, WeightVector) else WeightVector(w)
    t = w.weights
    if xs.ndim != 1 or xs.size != t.size:
        raise ValueError("xs and weights must have the same length")
    if np.any(np.diff(xs) < 0) or xs[0] <= 0:
        raise DomainError("need 0 < x_1 <= ... <= x_n")
    x1, xn = float(xs[0]), float(xs[-1])
    if x1 == xn:
        raise DegenerateError("x_1 == x_n: the Mercer interval is a point")
    fs = _f_scalar(f)
    lam = np.array([lambda_of(v, x1, xn) for v in xs])
    details = {"f": _fname(f), "h": h.name, "lambdas": lam}
    if not np.all(h.contains(np.concatenate([lam, 1.0 - lam]))):
        lam = np.clip(lam, ENDPOINT_NUDGE, 1.0 - ENDPOINT_NUDGE)
        details["perturbed_lambdas"] = lam
    ht = h(t)
    fvals = np.array([fs(v) for v in xs])
    ends = fs(x1) + fs(xn)
    lhs = fs(x1 + xn - float(t @ xs))
    weighted = float(ht @ fvals)
    coef = float(ht @ (h(lam) + h(1.0 - lam)))
    witness = {"xs": xs, "t": t}
    general_rhs = coef * ends - weighted
    details.update(coefficient=coef, general_rhs=general_rhs)
    parts = [_scalar_report(lhs, general_rhs, "f(x1+xn-sum t x)",
                            "sum h(t)[h(l)+h(1-l)] (f(x1)+f(xn)) - sum h(t) f(x)",
                            lambda k: witness)]
    if SUPERADDITIVE in h.flags and float(ht.sum()) <= 1.0 + 1e-12:
        parts.append(_scalar_report(lhs, float(h(1.0)) * ends - weighted, "f(x1+xn-sum t x)",
                                    "h(1)(f(x1)+f(xn)) - sum h(t) f(x)", lambda k: witness))
        if MULTIPLICATIVE in h.flags:
            parts.append(_scalar_report(lhs, ends - weighted, "f(x1+xn-sum t x)",
                                        "f(x1)+f(xn) - sum h(t) f(x)", lambda k: witness))
    if _is_identity(h):
        classical = ends - float(t @ fvals)
        details["classical_rhs"] = classical
        parts.append(_scalar_report(lhs, classical, "f(x1+xn-sum t x)",
                                    "f(x1)+f(xn) - sum t f(x)", lambda k: witness))
    return combine(parts, "f(x1+xn-sum t x)", "Mercer bounds", details)
