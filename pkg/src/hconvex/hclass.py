"""Weight functions h, scalar functions f, and sampled structural predicates.

Catalog entries are addressable by name (``"h:pow:0.5"``, ``"f:square"``);
parametric names are parsed on demand by :func:`get_h` / :func:`get_f`.
Flags are declared here and spot-checked by the predicates, never inferred.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .reports import PredicateReport

# h flags
SUPERADDITIVE = "superadditive"
SUBADDITIVE = "subadditive"
ADDITIVE = "additive"
SUPERMULTIPLICATIVE = "supermultiplicative"
SUBMULTIPLICATIVE = "submultiplicative"
MULTIPLICATIVE = "multiplicative"
OPERATOR_CONVEX = "operator_convex"
STRICTLY_POSITIVE = "strictly_positive"

# f flags
NONNEGATIVE = "nonnegative"
H_CONVEX_SCALAR = "h_convex_scalar"
OPERATOR_H_CONVEX = "operator_h_convex"
OPERATOR_H_MID_CONVEX = "operator_h_mid_convex"
OPERATOR_H_CONCAVE = "operator_h_concave"
OPERATOR_MONOTONE = "operator_monotone"
EVEN = "even"
CONVEX = "convex"
CONCAVE = "concave"
STRICTLY_CONVEX = "strictly_convex"
STRICTLY_CONCAVE = "strictly_concave"

PREDICATE_TOL = 1e-12
HCONVEX_TOL = 1e-10
SAMPLE_WINDOW = 4.0


def _as_float_array(t):
    return np.asarray(t, dtype=float)


@dataclass(frozen=True)
class HFunction:
    """Non-negative weight function h on an interval J containing (0, 1)."""

    name: str
    eval: Callable
    domain_lo: float = 0.0
    domain_hi: float = math.inf
    flags: frozenset = frozenset()
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "flags", frozenset(self.flags))
        if not (self.domain_lo <= 0.0 and self.domain_hi >= 1.0):
            raise ValueError(f"{self.name}: domain must contain (0, 1)")
        inner = np.linspace(0.0, 1.0, 66)[1:-1]
        vals = self.eval(inner)
        if np.any(vals < 0):
            raise ValueError(f"{self.name}: h must be non-negative")
        if not np.any(vals != 0):
            raise ValueError(f"{self.name}: h must not vanish identically on (0, 1)")
        if STRICTLY_POSITIVE in self.flags and not np.all(vals > 0):
            raise ValueError(f"{self.name}: flagged strictly_positive but vanishes on (0, 1)")

    def contains(self, t) -> np.ndarray:
        t = _as_float_array(t)
        lo_ok = t >= self.domain_lo if self.lo_closed else t > self.domain_lo
        hi_ok = t <= self.domain_hi if self.hi_closed else t < self.domain_hi
        return lo_ok & hi_ok

    def __call__(self, t):
        t = _as_float_array(t)
        if not np.all(self.contains(t)):
            bad = t[~self.contains(t)] if t.ndim else t
            raise DomainError(f"{self.name} evaluated outside its domain at {np.ravel(bad)[:3]}")
        return np.asarray(self.eval(t), dtype=float)

    def has(self, *flags: str) -> bool:
        return all(fl in self.flags for fl in flags)


@dataclass(frozen=True)
class ScalarFunction:
    """A real function f on [domain_lo, domain_hi], optionally with f'."""

    name: str
    eval: Callable
    domain_lo: float = -math.inf
    domain_hi: float = math.inf
    derivative: Optional[Callable] = None
    flags: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "flags", frozenset(self.flags))
        if not self.domain_lo < self.domain_hi:
            raise ValueError(f"{self.name}: empty domain")
        lo, hi = self.window()
        grid = np.linspace(lo, hi, 64)
        if NONNEGATIVE in self.flags and np.any(self.eval(grid) < 0):
            raise ValueError(f"{self.name}: flagged nonnegative but takes negative values")
        if self.derivative is not None:
            pts = np.linspace(lo, hi, 34)[1:-1]
            step = 1e-5 * np.maximum(1.0, np.abs(pts))
            fd = (self.eval(pts + step) - self.eval(pts - step)) / (2 * step)
            exact = np.asarray(self.derivative(pts), dtype=float)
            if np.any(np.abs(fd - exact) > 1e-6 * np.maximum(1.0, np.abs(exact))):
                raise ValueError(f"{self.name}: derivative disagrees with finite differences")

    def window(self, width: float = SAMPLE_WINDOW) -> tuple[float, float]:
        """Finite sampling window: the domain clipped to ``[-width, width]``."""
        lo = self.domain_lo if math.isfinite(self.domain_lo) else -width
        hi = self.domain_hi if math.isfinite(self.domain_hi) else max(lo, 0.0) + width
        if not math.isfinite(self.domain_lo) and math.isfinite(self.domain_hi):
            lo = min(hi, 0.0) - width
        return float(lo), float(hi)

    def contains(self, t, tol: float = 0.0) -> np.ndarray:
        t = _as_float_array(t)
        return (t >= self.domain_lo - tol) & (t <= self.domain_hi + tol)

    def __call__(self, t):
        t = _as_float_array(t)
        if not np.all(self.contains(t, 1e-12 * max(1.0, np.max(np.abs(t), initial=0.0)))):
            raise DomainError(f"{self.name} evaluated outside [{self.domain_lo}, {self.domain_hi}]")
        return np.asarray(self.eval(t), dtype=float)

    def restrict(self, lo: float, hi: float) -> "ScalarFunction":
        if lo < self.domain_lo or hi > self.domain_hi:
            raise DomainError(f"[{lo}, {hi}] is not inside the domain of {self.name}")
        return replace(self, domain_lo=float(lo), domain_hi=float(hi))

    def has(self, *flags: str) -> bool:
        return all(fl in self.flags for fl in flags)


CERTIFICATIONS = (H_CONVEX_SCALAR, OPERATOR_H_CONVEX, OPERATOR_H_MID_CONVEX)


@dataclass(frozen=True)
class CertifiedPair:
    """A declared (f, h) hypothesis with a reason it holds."""

    f: ScalarFunction
    h: HFunction
    certification: str
    provenance: str = ""

    def __post_init__(self):
        if self.certification not in CERTIFICATIONS:
            raise ValueError(f"unknown certification {self.certification!r}")
        if self.certification not in self.f.flags:
            raise ValueError(f"{self.f.name} lacks flag {self.certification}")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.f.name, self.h.name, self.certification)


# ---------------------------------------------------------------------------
# predicates


def _sample_points(h: HFunction, grid_n: int, range_hi: float, n_random: int, seed: int):
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    lo = max(h.domain_lo, 0.0)
    if lo >= range_hi:
        raise DomainError("empty sampling range")
    if h.lo_closed or lo > h.domain_lo:
        grid = np.linspace(lo, range_hi, grid_n)
    else:
        grid = np.linspace(lo, range_hi, grid_n + 1)[1:]
    rng = np.random.default_rng(seed)
    extra = rng.uniform(lo, range_hi, n_random)
    if not h.lo_closed and lo == h.domain_lo:
        extra = np.where(extra <= lo, range_hi, extra)
    pts = np.concatenate([grid, extra])
    if not np.all(h.contains(pts)):
        raise DomainError(f"sample range [0, {range_hi}] leaves the domain of {h.name}")
    return pts


def _pair_predicate(name, h, pts, combine_xy, residual):
    x, y = np.meshgrid(pts, pts, indexing="ij")
    z = combine_xy(x, y)
    if not np.all(h.contains(z)):
        raise DomainError(f"{name}: sampled combinations leave the domain of {h.name}")
    hz, hx, hy = h.eval(z), h.eval(x), h.eval(y)
    r, scale = residual(hz, hx, hy)
    # relative scaling only matters for unbounded h (e.g. x^-1/2 near 0)
    r = r / np.maximum(1.0, scale)
    k = np.unravel_index(np.argmin(r), r.shape)
    worst = float(r[k])
    return PredicateReport(worst >= -PREDICATE_TOL, worst, (float(x[k]), float(y[k])),
                           f"{name}({h.name})", int(r.size))


def check_superadditive(h: HFunction, grid_n: int = 256, range_hi: float = 1.0,
                        *, n_random: int = 256, seed: int = 0) -> PredicateReport:
    """Sampled check of h(x + y) >= h(x) + h(y) on [0, range_hi]^2."""
    pts = _sample_points(h, grid_n, range_hi, n_random, seed)
    return _pair_predicate(
        "superadditive", h, pts, np.add,
        lambda hz, hx, hy: (hz - hx - hy, np.maximum(np.abs(hz), np.abs(hx + hy))))


def check_subadditive(h: HFunction, grid_n: int = 256, range_hi: float = 1.0,
                      *, n_random: int = 256, seed: int = 0) -> PredicateReport:
    pts = _sample_points(h, grid_n, range_hi, n_random, seed)
    return _pair_predicate(
        "subadditive", h, pts, np.add,
        lambda hz, hx, hy: (hx + hy - hz, np.maximum(np.abs(hz), np.abs(hx + hy))))


def check_supermultiplicative(h: HFunction, grid_n: int = 256, range_hi: float = 1.0,
                              *, n_random: int = 256, seed: int = 0) -> PredicateReport:
    """Sampled check of h(xy) >= h(x) h(y)."""
    pts = _sample_points(h, grid_n, range_hi, n_random, seed)
    return _pair_predicate(
        "supermultiplicative", h, pts, np.multiply,
        lambda hz, hx, hy: (hz - hx * hy, np.maximum(np.abs(hz), np.abs(hx * hy))))


def check_submultiplicative(h: HFunction, grid_n: int = 256, range_hi: float = 1.0,
                            *, n_random: int = 256, seed: int = 0) -> PredicateReport:
    pts = _sample_points(h, grid_n, range_hi, n_random, seed)
    return _pair_predicate(
        "submultiplicative", h, pts, np.multiply,
        lambda hz, hx, hy: (hx * hy - hz, np.maximum(np.abs(hz), np.abs(hx * hy))))


def check_h_convex_scalar(f: ScalarFunction, h: HFunction, samples: int = 1000,
                          seed: int = 0) -> PredicateReport:
    """Random-triple check of f(tx + (1-t)y) <= h(t) f(x) + h(1-t) f(y).

    t is drawn from the open interval (0, 1); x and y from f's sampling window.
    """
    lo, hi = f.window()
    rng = np.random.default_rng(seed)
    x = rng.uniform(lo, hi, samples)
    y = rng.uniform(lo, hi, samples)
    t = rng.uniform(np.nextafter(0.0, 1.0), 1.0, samples)
    # include both endpoints of the window so boundary violations are seen
    x[:2], y[:2] = (lo, hi), (hi, lo)
    lhs = f(t * x + (1 - t) * y)
    rhs = h(t) * f(x) + h(1 - t) * f(y)
    scale = np.maximum(1.0, np.abs(rhs))
    r = rhs - lhs
    k = int(np.argmin(r / scale))
    holds = bool(np.all(r >= -HCONVEX_TOL * scale))
    return PredicateReport(holds, float(r[k]), (float(x[k]), float(y[k]), float(t[k])),
                           f"h_convex({f.name},{h.name})", samples)


# ---------------------------------------------------------------------------
# catalog


def _fmt(v: float) -> str:
    return repr(float(v)).rstrip("0").rstrip(".") if "e" not in repr(float(v)) else repr(float(v))


def power_h(s: float, name: Optional[str] = None) -> HFunction:
    """h(t) = t**s; multiplicative for every s."""
    s = float(s)
    flags = {MULTIPLICATIVE, SUPERMULTIPLICATIVE, SUBMULTIPLICATIVE, STRICTLY_POSITIVE}
    if s == 1.0:
        flags |= {ADDITIVE, SUPERADDITIVE, SUBADDITIVE}
    elif s > 1.0:
        flags.add(SUPERADDITIVE)
    elif s >= 0.0:
        flags.add(SUBADDITIVE)
    else:
        flags.add(SUBADDITIVE)
    if 1.0 <= s <= 2.0 or -1.0 <= s <= 0.0:
        flags.add(OPERATOR_CONVEX)
    if s == 0.0:
        fn = lambda t: np.ones_like(np.asarray(t, dtype=float))
    else:
        fn = lambda t: np.power(t, s)
    return HFunction(name or f"h:pow:{_fmt(s)}", fn, 0.0, math.inf, frozenset(flags),
                     lo_closed=s >= 0.0)


def shifted_power_h(c: float, p: float) -> HFunction:
    """h(x) = (c + x)**(p - 1) on [0, inf)."""
    c, p = float(c), float(p)
    r = p - 1.0
    if c == 0.0:
        h = power_h(r)
        return replace(h, name=f"h:shiftpow:{_fmt(c)}:{_fmt(p)}")
    flags = {STRICTLY_POSITIVE}
    if c >= 1.0 and p < 1.0:
        flags.add(SUPERMULTIPLICATIVE)
    if c >= 1.0 and p > 1.0:
        flags.add(SUBMULTIPLICATIVE)
    if r <= 1.0:
        flags.add(SUBADDITIVE)
    if -1.0 <= r <= 0.0 or 1.0 <= r <= 2.0:
        flags.add(OPERATOR_CONVEX)
    return HFunction(f"h:shiftpow:{_fmt(c)}:{_fmt(p)}", lambda x: np.power(c + x, r),
                     0.0, math.inf, frozenset(flags))


def _max_half():
    return HFunction("h:max_half", lambda t: np.maximum(t, 0.5), 0.0, math.inf,
                     frozenset({STRICTLY_POSITIVE}))


def square_f() -> ScalarFunction:
    return ScalarFunction(
        "f:square", lambda t: t * t, derivative=lambda t: 2 * np.asarray(t, dtype=float),
        flags={NONNEGATIVE, EVEN, CONVEX, STRICTLY_CONVEX, H_CONVEX_SCALAR,
               OPERATOR_H_CONVEX, OPERATOR_H_MID_CONVEX})


def quartic_f() -> ScalarFunction:
    return ScalarFunction(
        "f:quartic", lambda t: t ** 4, derivative=lambda t: 4 * np.asarray(t, dtype=float) ** 3,
        flags={NONNEGATIVE, EVEN, CONVEX, H_CONVEX_SCALAR})


def cube_f() -> ScalarFunction:
    # not non-negative and not operator convex on [-2, 2]; used to show checkers can fail
    return ScalarFunction("f:cube", lambda t: t ** 3, -2.0, 2.0,
                          derivative=lambda t: 3 * np.asarray(t, dtype=float) ** 2)


def one_plus_square_f() -> ScalarFunction:
    return ScalarFunction(
        "f:one_plus_square", lambda t: 1.0 + t * t,
        derivative=lambda t: 2 * np.asarray(t, dtype=float),
        flags={NONNEGATIVE, EVEN, CONVEX, STRICTLY_CONVEX, H_CONVEX_SCALAR,
               OPERATOR_H_CONVEX, OPERATOR_H_MID_CONVEX})


def abspow_f(p: float) -> ScalarFunction:
    """|t|**p; for 0 < p < 1 an even P-function."""
    p = float(p)
    flags = {NONNEGATIVE, EVEN, H_CONVEX_SCALAR}
    if p >= 1.0:
        flags.add(CONVEX)
    return ScalarFunction(f"f:abspow:{_fmt(p)}", lambda t: np.abs(t) ** p, flags=flags)


def pow_f(s: float) -> ScalarFunction:
    """t**s on [0, inf)."""
    s = float(s)
    flags = {NONNEGATIVE, H_CONVEX_SCALAR}
    if 0.0 < s < 1.0:
        flags |= {CONCAVE, STRICTLY_CONCAVE, OPERATOR_MONOTONE}
    deriv = None
    if s >= 1.0:
        deriv = lambda t: s * np.asarray(t, dtype=float) ** (s - 1.0)
    return ScalarFunction(f"f:pow:{_fmt(s)}", lambda t: np.power(t, s), 0.0, math.inf,
                          derivative=deriv, flags=flags)


_H_FIXED = {
    "h:id": lambda: power_h(1.0, "h:id"),
    "h:one": lambda: power_h(0.0, "h:one"),
    "h:inv": lambda: power_h(-1.0, "h:inv"),
    "h:sq": lambda: power_h(2.0, "h:sq"),
    "h:max_half": _max_half,
}
_F_FIXED = {
    "f:square": square_f,
    "f:quartic": quartic_f,
    "f:cube": cube_f,
    "f:one_plus_square": one_plus_square_f,
    "f:sqrt": lambda: replace(pow_f(0.5), name="f:sqrt"),
}


def get_h(name: str) -> HFunction:
    if name in _H_FIXED:
        return _H_FIXED[name]()
    parts = name.split(":")
    try:
        if parts[:2] == ["h", "pow"] and len(parts) == 3:
            return power_h(float(parts[2]))
        if parts[:2] == ["h", "shiftpow"] and len(parts) == 4:
            return shifted_power_h(float(parts[2]), float(parts[3]))
    except ValueError:
        pass
    raise KeyError(f"unknown h function {name!r}")


def get_f(name: str) -> ScalarFunction:
    if name in _F_FIXED:
        return _F_FIXED[name]()
    parts = name.split(":")
    try:
        if parts[:2] == ["f", "abspow"] and len(parts) == 3:
            return abspow_f(float(parts[2]))
        if parts[:2] == ["f", "pow"] and len(parts) == 3:
            return pow_f(float(parts[2]))
    except ValueError:
        pass
    raise KeyError(f"unknown f function {name!r}")


CATALOG_H = ("h:id", "h:one", "h:inv", "h:sq", "h:pow:0.25", "h:pow:0.5", "h:pow:0.75",
             "h:shiftpow:0:0.5", "h:shiftpow:1:0.5", "h:shiftpow:1:2", "h:max_half")
CATALOG_F = ("f:square", "f:quartic", "f:cube", "f:one_plus_square", "f:abspow:0.5",
             "f:pow:0.25", "f:pow:0.5", "f:pow:0.75")

_DOMINATES_T = "f is convex and non-negative, and h(t) >= t on (0, 1)"
_OP_DOMINATES_T = ("t^2 is operator convex with f(A) >= 0, and h(t) >= t on (0, 1), "
                   "so t f(A) + (1-t) f(B) <= h(t) f(A) + h(1-t) f(B)")

# (f, h, certification, provenance)
_PAIRS = [
    ("f:square", "h:id", OPERATOR_H_CONVEX, "classical operator convexity of t^2"),
    ("f:square", "h:id", OPERATOR_H_MID_CONVEX, "classical operator convexity of t^2"),
    ("f:square", "h:id", H_CONVEX_SCALAR, "non-negative convex function with h(t) = t"),
    ("f:square", "h:max_half", OPERATOR_H_MID_CONVEX,
     "h(1/2)(A^2+B^2) - ((A+B)/2)^2 >= (A-B)^2/4 when h(t) >= t"),
    ("f:one_plus_square", "h:id", OPERATOR_H_CONVEX, "affine shift of operator convex t^2"),
    ("f:one_plus_square", "h:id", H_CONVEX_SCALAR, "non-negative convex function"),
    ("f:quartic", "h:id", H_CONVEX_SCALAR, "non-negative convex function"),
    ("f:quartic", "h:pow:0.5", H_CONVEX_SCALAR, _DOMINATES_T),
    ("f:abspow:0.5", "h:one", H_CONVEX_SCALAR, "|t|^p with 0<p<1 is an even P-function"),
    ("f:abspow:0.5", "h:inv", H_CONVEX_SCALAR, "P-functions satisfy the 1/t bound a fortiori"),
]
for _h in ("h:one", "h:inv", "h:pow:0.25", "h:pow:0.5", "h:pow:0.75", "h:shiftpow:0:0.5",
           "h:max_half"):
    _PAIRS.append(("f:square", _h, H_CONVEX_SCALAR, _DOMINATES_T))
    _PAIRS.append(("f:square", _h, OPERATOR_H_CONVEX, _OP_DOMINATES_T))
for _s in ("0.25", "0.5", "0.75"):
    _PAIRS.append((f"f:pow:{_s}", f"h:pow:{_s}", H_CONVEX_SCALAR,
                   "t^s is s-convex in the second sense, a subclass of SX(t^s)"))


def certified_pairs() -> list[CertifiedPair]:
    return [CertifiedPair(get_f(f), get_h(h), c, why) for f, h, c, why in _PAIRS]


_CERT_KEYS = frozenset((f, h, c) for f, h, c, _ in _PAIRS)


def is_certified(f, h, certification: str) -> bool:
    """Whether the catalog declares (f, h) with the given certification."""
    fname = f if isinstance(f, str) else f.name
    hname = h if isinstance(h, str) else h.name
    if (fname, hname, certification) in _CERT_KEYS:
        return True
    # operator h-convexity implies the mid-point form and the scalar form
    if certification in (OPERATOR_H_MID_CONVEX, H_CONVEX_SCALAR):
        return (fname, hname, OPERATOR_H_CONVEX) in _CERT_KEYS
    return False


def builtin_catalog() -> list:
    """All catalog h functions, f functions, and certified pairs."""
    hs = [get_h(n) for n in CATALOG_H]
    fs = [get_f(n) for n in CATALOG_F]
    return hs + fs + certified_pairs()


def catalog_names() -> dict[str, list[str]]:
    return {
        "h": list(CATALOG_H),
        "f": list(CATALOG_F),
        "pairs": [f"{f}|{h}|{c}" for f, h, c, _ in _PAIRS],
    }
