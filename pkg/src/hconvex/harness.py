"""Seeded verification suites and counterexample search.

A run expands a :class:`SuiteConfig` into (check, pair, dim, trial) cells.
Each cell draws its instance from its own ``SeedSequence``, so results do
not depend on execution order, and records come out sorted by cell.
"""
from __future__ import annotations

import json
import logging
import math
import os
import time
import zlib
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import hclass as hc
from . import opineq as op
from . import scalar_ineq as sc
from .errors import ConfigError, DegenerateError, HConvexError
from .matcore import DEFAULT_TOL_REL, HermitianMatrix, rand_hermitian, spectrum_in
from .posmaps import EACH_UNITAL, JOINTLY_UNITAL, random_family
from .reports import IneqReport, PredicateReport, Verdict, combine, to_jsonable

log = logging.getLogger(__name__)

SUITES = ("hclass", "scalar", "operator", "complementary")
DEFAULT_DIMS = (2, 3, 4, 6)
SCALAR_MAX_DIM = 8
REPORT_DIR_ENV = "HCONVEX_REPORT_DIR"
HH_EXPONENTS = ("0.25", "0.5", "0.75")
BETA_ORACLE_POINTS = 100_001


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int = 10
    dims: tuple = DEFAULT_DIMS
    interval: tuple = (0.5, 2.0)
    tol_rel: float = DEFAULT_TOL_REL
    suites: tuple = SUITES
    catalog_filter: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "interval", tuple(float(v) for v in self.interval))
        object.__setattr__(self, "suites", tuple(self.suites))
        object.__setattr__(self, "catalog_filter", tuple(self.catalog_filter))
        if int(self.trials) < 1:
            raise ConfigError("trials must be at least 1")
        if not self.dims or min(self.dims) < 1:
            raise ConfigError("dims must be positive")
        if len(self.interval) != 2 or not self.interval[0] < self.interval[1]:
            raise ConfigError(f"interval must satisfy m < M, got {self.interval}")
        if not self.tol_rel > 0:
            raise ConfigError("tol_rel must be positive")
        unknown = set(self.suites) - set(SUITES)
        if unknown or not self.suites:
            raise ConfigError(f"unknown suites {sorted(unknown)}; choose from {SUITES}")
        known = set(hc.CATALOG_H) | set(hc.CATALOG_F)
        for name in self.catalog_filter:
            if name not in known:
                try:
                    (hc.get_h if name.startswith("h:") else hc.get_f)(name)
                except KeyError as exc:
                    raise ConfigError(f"unknown catalog name {name!r}") from exc

    def to_dict(self) -> dict:
        return to_jsonable(asdict(self))


@dataclass(frozen=True)
class CheckSpec:
    """A registered check: which pairs it runs on and how to build and run an instance."""

    check_id: str
    suite: str
    anchor: str
    pairs: Callable  # () -> list of (f_name, h_name)
    certified: Callable  # (f, h) -> bool
    generate: Callable  # (rng, f, h, dim, m, M, trial) -> dict
    run: Callable  # (f, h, instance, tol_rel) -> IneqReport
    dims: Callable = None  # (cfg) -> tuple of dims; default cfg.dims


# ---------------------------------------------------------------------------
# catalog helpers


def _scalar_pairs(pred=lambda f, h: True):
    out = []
    for f, h, c, _ in hc._PAIRS:
        if c == hc.H_CONVEX_SCALAR or c == hc.OPERATOR_H_CONVEX:
            pair = (f, h)
            if pair not in out and pred(hc.get_f(f), hc.get_h(h)):
                out.append(pair)
    return out


def _op_pairs(cert: str, pred=lambda f, h: True):
    out = []
    for f, h, c, _ in hc._PAIRS:
        if c == cert and (f, h) not in out and pred(hc.get_f(f), hc.get_h(h)):
            out.append((f, h))
    return out


def _closed_unit(h) -> bool:
    return bool(np.all(h.contains([0.0, 1.0])))


def _mercer_ok(f, h) -> bool:
    """Hypotheses of the operator Mercer chain and the complementary bound.

    The right-hand side counts the constant term nu_h = h(0) of the chord of
    h once, while summing the per-map bounds produces it n times; the chain
    is therefore only certified when h(0) = 0.
    """
    return (hc.is_certified(f, h, hc.OPERATOR_H_CONVEX)
            and h.has(hc.OPERATOR_CONVEX, hc.SUPERMULTIPLICATIVE)
            and _closed_unit(h) and float(h(0.0)) == 0.0)


def _supermult(h) -> bool:
    return hc.SUPERMULTIPLICATIVE in h.flags


# ---------------------------------------------------------------------------
# instance generation


def _rng_int(rng) -> int:
    return int(rng.integers(0, 2**63 - 1))


def _weights(rng, n: int) -> np.ndarray:
    w = np.maximum(rng.dirichlet(np.ones(n)), 1e-6)
    w /= w.sum()
    w[-1] = 1.0 - float(w[:-1].sum())
    return w


def _mats(rng, n, dim, m, M):
    return [rand_hermitian(dim, m, M, seed=_rng_int(rng)) for _ in range(n)]


def _one_map(rng, dim):
    kind = ("conjugation", "pinching", "mixture", "trace")[int(rng.integers(0, 4))]
    if kind == "trace":
        dim_out = 1
    elif kind == "conjugation":
        dim_out = int(rng.integers(1, dim + 1))
    else:
        dim_out = dim
    if kind == "pinching" and dim == 1:
        kind = "conjugation"
    return random_family(1, dim, dim_out, EACH_UNITAL, seed=_rng_int(rng), kinds=(kind,)).maps[0]


def _family(rng, n, dim, mode):
    if mode == JOINTLY_UNITAL:
        return random_family(n, dim, int(rng.integers(1, dim + 1)), JOINTLY_UNITAL,
                             seed=_rng_int(rng))
    kinds = ("conjugation", "pinching", "mixture") if dim > 1 else ("conjugation",)
    return random_family(n, dim, dim, EACH_UNITAL, seed=_rng_int(rng), kinds=kinds)


def _gen_pair_mats(rng, f, h, dim, m, M, trial):
    A, B = _mats(rng, 2, dim, m, M)
    return {"A": A, "B": B}


def _gen_contraction(rng, f, h, dim, m, M, trial):
    n = int(rng.integers(1, 4))
    return {"As": _mats(rng, n, dim, m, M), "family": _family(rng, n, dim, JOINTLY_UNITAL)}


def _gen_dcj(rng, f, h, dim, m, M, trial):
    return {"A": _mats(rng, 1, dim, m, M)[0], "phi": _one_map(rng, dim)}


def _gen_weighted(rng, f, h, dim, m, M, trial):
    n = int(rng.integers(2, 4))
    return {"As": _mats(rng, n, dim, m, M), "w": _weights(rng, n)}


def _gen_cor(rng, f, h, dim, m, M, trial):
    inst = _gen_weighted(rng, f, h, dim, m, M, trial)
    inst["phi"] = _one_map(rng, dim)
    return inst


def _gen_mercer(rng, f, h, dim, m, M, trial):
    n = int(rng.integers(1, 4))
    mode = JOINTLY_UNITAL if trial % 4 == 3 else EACH_UNITAL
    inst = {"As": _mats(rng, n, dim, m, M), "w": _weights(rng, n),
            "family": _family(rng, n, dim, mode), "m": m, "M": M}
    inst["alpha"] = float(rng.uniform(0.25, 4.0))
    return inst


def _gen_vectors(rng, f, h, dim, m, M, trial):
    kind = sc.NORM_KINDS[int(rng.integers(0, 3))]
    return {"x": sc.VectorPoint(2.0 * rng.standard_normal(dim), kind),
            "y": sc.VectorPoint(2.0 * rng.standard_normal(dim), kind),
            "t": float(rng.uniform(0.01, 0.99)), "seed": _rng_int(rng)}


def _gen_lemma(rng, f, h, dim, m, M, trial):
    x, y = np.sort(rng.uniform(0.1, 4.0, 2))
    return {"x": float(x), "y": float(y), "z": float(rng.uniform(x, y))}


def _gen_mercer_h(rng, f, h, dim, m, M, trial):
    n = dim + 1
    return {"xs": np.sort(rng.uniform(0.1, 4.0, n)), "w": _weights(rng, n)}


def _gen_beta(rng, f, h, dim, m, M, trial):
    return {"alpha": float(rng.uniform(-2.0, 4.0)) if trial % 2 else float(rng.uniform(0.1, 4.0)),
            "m": m, "M": M}


def _gen_none(rng, f, h, dim, m, M, trial):
    return {"seed": _rng_int(rng)}


# ---------------------------------------------------------------------------
# runners


def _predicate_to_report(p: PredicateReport, lhs_tag: str, rhs_tag: str, tol: float):
    return IneqReport.from_gap(lhs_tag, rhs_tag, p.worst_violation, tol,
                               {"point": list(p.witness)},
                               {"predicate": p.name, "n_evaluated": p.n_evaluated})


_STRUCTURE = {
    hc.SUPERADDITIVE: hc.check_superadditive,
    hc.SUBADDITIVE: hc.check_subadditive,
    hc.SUPERMULTIPLICATIVE: hc.check_supermultiplicative,
    hc.SUBMULTIPLICATIVE: hc.check_submultiplicative,
}


def _run_structure(f, h, inst, tol):
    parts = []
    for flag, fn in _STRUCTURE.items():
        if flag in h.flags:
            parts.append(_predicate_to_report(fn(h, seed=inst["seed"] % 2**32), flag, "holds",
                                              hc.PREDICATE_TOL))
    if not parts:
        return IneqReport.degenerate("structure", "flags", f"{h.name} declares no flags")
    return combine(parts, f"declared flags of {h.name}", "sampled predicates")


def _run_h_convex(f, h, inst, tol):
    p = hc.check_h_convex_scalar(f, h, samples=500, seed=inst["seed"] % 2**32)
    lo, hi = f.window()
    return _predicate_to_report(p, "f(tx+(1-t)y)", "h(t)f(x)+h(1-t)f(y)",
                                hc.HCONVEX_TOL * max(1.0, abs(float(f(lo))), abs(float(f(hi)))))


def _beta_oracle(f, h, inst, tol):
    g = f
    c = op.beta_compute(f, g, h, inst["alpha"], inst["m"], inst["M"])
    params = op.PsiParams.from_functions(f, h, inst["alpha"], inst["m"], inst["M"])
    grid = np.linspace(inst["m"], inst["M"], BETA_ORACLE_POINTS)
    brute = float(np.max(op.psi_eval(params, g, grid)))
    diff = abs(c.beta - brute)
    return IneqReport.from_gap("|beta - grid max|", "1e-6", 1e-6 - diff, 0.0,
                               {"alpha": inst["alpha"]},
                               {"beta": c.beta, "grid_max": brute, "t_star": c.t_star})


def _t0_consistency(f, h, inst, tol):
    alpha = abs(inst["alpha"]) or 1.0
    t0 = op.t0_compute(f, h, alpha, inst["m"], inst["M"])
    c = op.beta_compute(f, f, h, alpha, inst["m"], inst["M"])
    params = op.PsiParams.from_functions(f, h, alpha, inst["m"], inst["M"])
    diff = abs(op.psi_eval(params, f, t0) - c.beta)
    return IneqReport.from_gap("|Psi(t0) - beta|", "1e-7", 1e-7 - diff, 0.0, {"alpha": alpha},
                               {"t0": t0, "t_star": c.t_star, "beta": c.beta})


def _strictly_convex_with_derivative(f, h) -> bool:
    return hc.STRICTLY_CONVEX in f.flags and f.derivative is not None


CHECKS: dict[str, CheckSpec] = {}


def _register(spec: CheckSpec):
    CHECKS[spec.check_id] = spec


def _scalar_dims(cfg):
    return tuple(sorted({min(d, SCALAR_MAX_DIM) for d in cfg.dims}))


def _even(f, h):
    return hc.EVEN in f.flags


_register(CheckSpec(
    "h_structure", "hclass", "structural flags of h",
    lambda: [("-", n) for n in hc.CATALOG_H if set(_STRUCTURE) & hc.get_h(n).flags],
    lambda f, h: True, _gen_none, _run_structure,
    lambda cfg: (0,)))
_register(CheckSpec(
    "h_convex_scalar", "hclass", "scalar h-convexity",
    lambda: _scalar_pairs(), lambda f, h: hc.is_certified(f, h, hc.H_CONVEX_SCALAR),
    _gen_none, _run_h_convex, lambda cfg: (1,)))

_register(CheckSpec(
    "char1", "scalar", "segment characterization",
    lambda: _scalar_pairs(_even), lambda f, h: hc.is_certified(f, h, hc.H_CONVEX_SCALAR),
    _gen_vectors,
    lambda f, h, i, tol: sc.check_char1(f, h, i["x"], i["y"], trials=200, seed=i["seed"]),
    _scalar_dims))
_register(CheckSpec(
    "char3", "scalar", "extrapolation characterization",
    lambda: _scalar_pairs(lambda f, h: _even(f, h) and h.has(hc.MULTIPLICATIVE,
                                                              hc.STRICTLY_POSITIVE)),
    lambda f, h: hc.is_certified(f, h, hc.H_CONVEX_SCALAR), _gen_vectors,
    lambda f, h, i, tol: sc.check_char3(f, h, i["x"], i["y"], trials=100, seed=i["seed"]),
    _scalar_dims))
_register(CheckSpec(
    "even_chain", "scalar", "even-function chain",
    lambda: _scalar_pairs(_even), lambda f, h: hc.is_certified(f, h, hc.H_CONVEX_SCALAR),
    _gen_vectors, lambda f, h, i, tol: sc.check_even_chain(f, h, i["x"], i["y"], i["t"]),
    _scalar_dims))
_register(CheckSpec(
    "even_integral", "scalar", "integrated even-function bounds",
    lambda: _scalar_pairs(lambda f, h: _even(f, h) and _closed_unit(h)),
    lambda f, h: hc.is_certified(f, h, hc.H_CONVEX_SCALAR), _gen_vectors,
    lambda f, h, i, tol: sc.check_even_integral(f, h, i["x"], i["y"]), _scalar_dims))
_register(CheckSpec(
    "hh_norm", "scalar", "Hermite-Hadamard bounds for the p-th power of a norm",
    lambda: [("p:" + p, "h:one") for p in HH_EXPONENTS], lambda f, h: True, _gen_vectors,
    lambda f, h, i, tol: sc.check_hh_norm(i["x"], i["y"], float(f.split(":")[1])),
    _scalar_dims))
_register(CheckSpec(
    "mercer_lemma", "scalar", "Mercer lemma",
    lambda: _scalar_pairs(), lambda f, h: hc.is_certified(f, h, hc.H_CONVEX_SCALAR),
    _gen_lemma, lambda f, h, i, tol: sc.check_mercer_lemma(f, h, i["x"], i["y"], i["z"]),
    lambda cfg: (1,)))
_register(CheckSpec(
    "mercer_h", "scalar", "Jensen-Mercer for h-convex functions",
    lambda: _scalar_pairs(), lambda f, h: (hc.is_certified(f, h, hc.H_CONVEX_SCALAR)
                                           and _supermult(h)),
    _gen_mercer_h, lambda f, h, i, tol: sc.check_mercer_h(f, h, i["xs"], i["w"]),
    _scalar_dims))

_register(CheckSpec(
    "op_hmid", "operator", "operator h-mid-convexity",
    lambda: _op_pairs(hc.OPERATOR_H_MID_CONVEX) + [
        p for p in _op_pairs(hc.OPERATOR_H_CONVEX)
        if p not in _op_pairs(hc.OPERATOR_H_MID_CONVEX)],
    lambda f, h: hc.is_certified(f, h, hc.OPERATOR_H_MID_CONVEX), _gen_pair_mats,
    lambda f, h, i, tol: op.check_op_hmid(f, h, i["A"], i["B"], tol)))
_register(CheckSpec(
    "jensen_contraction", "operator", "operator Jensen, contraction form",
    lambda: _op_pairs(hc.OPERATOR_H_CONVEX),
    lambda f, h: hc.is_certified(f, h, hc.OPERATOR_H_MID_CONVEX) and _supermult(h),
    _gen_contraction,
    lambda f, h, i, tol: op.check_jensen_contraction(f, h, i["As"], i["family"], tol)))
_register(CheckSpec(
    "dcj", "operator", "Davis-Choi-Jensen",
    lambda: _op_pairs(hc.OPERATOR_H_CONVEX),
    lambda f, h: hc.is_certified(f, h, hc.OPERATOR_H_CONVEX), _gen_dcj,
    lambda f, h, i, tol: op.check_dcj(f, h, i["phi"], i["A"], tol)))
_register(CheckSpec(
    "weighted_jensen", "operator", "weighted operator Jensen",
    lambda: _op_pairs(hc.OPERATOR_H_CONVEX),
    lambda f, h: hc.is_certified(f, h, hc.OPERATOR_H_CONVEX) and _supermult(h),
    _gen_weighted, lambda f, h, i, tol: op.check_weighted_jensen(f, h, i["As"], i["w"], tol)))
_register(CheckSpec(
    "cor_weighted_dcj", "operator", "weighted Davis-Choi-Jensen",
    lambda: _op_pairs(hc.OPERATOR_H_CONVEX),
    lambda f, h: hc.is_certified(f, h, hc.OPERATOR_H_CONVEX) and _supermult(h),
    _gen_cor, lambda f, h, i, tol: op.check_cor_weighted_dcj(f, h, i["phi"], i["As"], i["w"],
                                                             tol)))
_register(CheckSpec(
    "mercer_operator", "operator", "operator Mercer chain",
    lambda: _op_pairs(hc.OPERATOR_H_CONVEX, _mercer_ok), _mercer_ok, _gen_mercer,
    lambda f, h, i, tol: op.check_mercer_operator(f, h, i["family"], i["As"], i["w"], i["m"],
                                                  i["M"], tol).as_ineq_report()))

_register(CheckSpec(
    "complementary", "complementary", "complementary Jensen",
    lambda: _op_pairs(hc.OPERATOR_H_CONVEX, _mercer_ok), _mercer_ok, _gen_mercer,
    lambda f, h, i, tol: op.check_complementary(f, f, h, i["alpha"], i["family"], i["As"],
                                                i["w"], i["m"], i["M"], tol)))
_register(CheckSpec(
    "thm511_linear_F", "complementary", "F-bound with linear F",
    lambda: _op_pairs(hc.OPERATOR_H_CONVEX, _mercer_ok), _mercer_ok, _gen_mercer,
    lambda f, h, i, tol: op.check_thm511_linear_F(f, f, h, i["alpha"], i["family"], i["As"],
                                                  i["w"], i["m"], i["M"], tol)))
_register(CheckSpec(
    "beta_oracle", "complementary", "complementary constant against a brute-force grid",
    lambda: _op_pairs(hc.OPERATOR_H_CONVEX, lambda f, h: _closed_unit(h)),
    lambda f, h: True, _gen_beta, _beta_oracle, lambda cfg: (1,)))
_register(CheckSpec(
    "t0_case", "complementary", "three-case maximizer of Psi",
    lambda: _op_pairs(hc.OPERATOR_H_CONVEX,
                      lambda f, h: _closed_unit(h) and _strictly_convex_with_derivative(f, h)),
    lambda f, h: True, _gen_beta, _t0_consistency, lambda cfg: (1,)))


# ---------------------------------------------------------------------------
# running


def _cell_seed(seed: int, check_id: str, pair: tuple, dim: int, trial: int):
    key = [seed, zlib.crc32(check_id.encode()), zlib.crc32("|".join(pair).encode()), dim, trial]
    return np.random.SeedSequence(key)


def _resolve(pair):
    fname, hname = pair
    f = hc.get_f(fname) if fname.startswith("f:") else fname
    return f, hc.get_h(hname)


def _pairs_for(spec: CheckSpec, cfg: SuiteConfig):
    pairs = spec.pairs()
    if cfg.catalog_filter:
        keep = set(cfg.catalog_filter)
        pairs = [p for p in pairs if all(n in keep for n in p if n.startswith(("f:", "h:")))]
    return pairs


def run_cell(spec: CheckSpec, pair, dim: int, trial: int, cfg: SuiteConfig) -> dict:
    f, h = _resolve(pair)
    m, M = cfg.interval
    rng = np.random.default_rng(_cell_seed(cfg.seed, spec.check_id, pair, dim, trial))
    certified = bool(spec.certified(f, h)) if isinstance(f, hc.ScalarFunction) or \
        spec.check_id in ("h_structure", "hh_norm") else False
    rec = {"check": spec.check_id, "suite": spec.suite, "anchor": spec.anchor,
           "f": pair[0], "h": pair[1], "dim": dim, "trial": trial, "certified": certified}
    try:
        inst = spec.generate(rng, f, h, dim, m, M, trial)
        report = spec.run(f, h, inst, cfg.tol_rel)
    except DegenerateError as exc:
        report = IneqReport.degenerate("-", "-", str(exc))
    except (HConvexError, ValueError, ArithmeticError) as exc:
        log.warning("%s on %s dim %d trial %d raised %s", spec.check_id, pair, dim, trial, exc)
        report = IneqReport("-", "-", float("nan"), 0.0, Verdict.VIOLATED, {},
                            {"error": f"{type(exc).__name__}: {exc}"})
    rec.update(verdict=report.verdict.value, gap=report.gap_min_eig,
               tolerance=report.tolerance_used, lhs=report.lhs_tag, rhs=report.rhs_tag)
    if report.verdict is Verdict.VIOLATED:
        rec["witness"] = report.witness
        rec["details"] = report.details
    return to_jsonable(rec)


@dataclass
class SuiteReport:
    config: dict
    records: list
    totals: dict
    wall_time: float

    @property
    def certified_violations(self) -> int:
        return self.totals["certified_violations"]

    @property
    def exit_code(self) -> int:
        return 0 if self.certified_violations == 0 else 1

    def summary(self) -> dict:
        return {"summary": True, "config": self.config, "totals": self.totals,
                "wall_time": self.wall_time}

    def to_jsonl(self) -> str:
        lines = [json.dumps(r, sort_keys=True) for r in self.records]
        lines.append(json.dumps(self.summary(), sort_keys=True))
        return "\n".join(lines) + "\n"

    def write(self, path) -> str:
        path = os.fspath(path)
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_jsonl())
        return path


def _totals(records) -> dict:
    out = {"checks_run": len(records), "holds": 0, "violations": 0, "degenerate": 0,
           "certified_violations": 0}
    for r in records:
        if r["verdict"] == Verdict.HOLDS.value:
            out["holds"] += 1
        elif r["verdict"] == Verdict.DEGENERATE.value:
            out["degenerate"] += 1
        else:
            out["violations"] += 1
            out["certified_violations"] += int(r["certified"])
    return out


def run_suite(config: SuiteConfig, checks: Optional[Sequence[str]] = None) -> SuiteReport:
    """Run every enabled check over its generated instances."""
    start = time.perf_counter()
    selected = [s for s in CHECKS.values() if s.suite in config.suites]
    if checks is not None:
        unknown = set(checks) - set(CHECKS)
        if unknown:
            raise ConfigError(f"unknown checks {sorted(unknown)}")
        selected = [s for s in selected if s.check_id in checks]
    cells = []
    for spec in selected:
        dims = spec.dims(config) if spec.dims else config.dims
        for pair in _pairs_for(spec, config):
            for dim in dims:
                for trial in range(config.trials):
                    cells.append((spec.check_id, pair, dim, trial))
    cells.sort()
    records = [run_cell(CHECKS[c], p, d, t, config) for c, p, d, t in cells]
    return SuiteReport(config.to_dict(), records, _totals(records),
                       time.perf_counter() - start)


def default_report_path(name: str = "hconvex-report.jsonl") -> str:
    return os.path.join(os.environ.get(REPORT_DIR_ENV, "."), name)


# ---------------------------------------------------------------------------
# counterexample search


@dataclass
class Counterexample:
    check: str
    f: str
    h: str
    instance: dict
    report: IneqReport
    evaluations: int
    trial: int
    shrink_steps: int = 0

    @property
    def dim(self) -> int:
        for key in ("A", "As"):
            if key in self.instance:
                a = self.instance[key]
                a = a[0] if isinstance(a, list) else a
                return HermitianMatrix(a).dim
        return 0

    def to_dict(self) -> dict:
        inst = {k: ([HermitianMatrix(a).to_list() for a in v] if k == "As" else
                    HermitianMatrix(v).to_list() if k in ("A", "B") else v)
                for k, v in self.instance.items() if k in ("A", "B", "As", "w")}
        return to_jsonable({"check": self.check, "f": self.f, "h": self.h, "dim": self.dim,
                            "instance": inst, "gap": self.report.gap_min_eig,
                            "tolerance": self.report.tolerance_used,
                            "evaluations": self.evaluations, "trial": self.trial,
                            "shrink_steps": self.shrink_steps})


class _Budget:
    def __init__(self, n: int):
        self.left = n
        self.used = 0

    def take(self) -> bool:
        if self.left <= 0:
            return False
        self.left -= 1
        self.used += 1
        return True


def _violates(spec, f, h, inst, tol, budget: _Budget):
    if not budget.take():
        return None
    try:
        r = spec.run(f, h, inst, tol)
    except DegenerateError:
        return False
    return r if r.verdict is Verdict.VIOLATED else False


def _shrink_candidates(inst, m, M):
    """Smaller variants: leading principal block of half size, then single zeroed off-diagonals.

    Instances carrying maps keep their dimension, since the maps fix it.
    """
    keys = [k for k in ("A", "B", "As") if k in inst]
    if not keys:
        return

    def mats(i):
        return [np.asarray(a) for k in keys for a in (i[k] if k == "As" else [i[k]])]

    def remap(fn):
        out = dict(inst)
        for k in keys:
            out[k] = [fn(np.asarray(a)) for a in inst[k]] if k == "As" else fn(np.asarray(inst[k]))
        return out

    current = mats(inst)
    n = current[0].shape[0]
    if n > 1 and not any(k in inst for k in ("phi", "family")):
        half = (n + 1) // 2
        yield remap(lambda a: a[:half, :half])
    for i in range(n):
        for j in range(i + 1, n):
            if not any(a[i, j] != 0 for a in current):
                continue

            def zero(a, i=i, j=j):
                b = np.array(a)
                b[i, j] = b[j, i] = 0
                return b

            cand = remap(zero)
            if all(spectrum_in(HermitianMatrix(a), m, M) for a in mats(cand)):
                yield cand


def search_counterexample(target: str, f, h, budget: int = 1000, seed: int = 0, *,
                          dim: int = 2, interval: Optional[tuple] = None,
                          tol_rel: float = DEFAULT_TOL_REL) -> Optional[Counterexample]:
    """First violating instance within ``budget`` evaluations, greedily shrunk.

    Every call of the checker, including those made while shrinking, uses one
    unit of budget.
    """
    if target not in CHECKS:
        raise ConfigError(f"unknown check {target!r}; choose from {sorted(CHECKS)}")
    if int(budget) < 1:
        raise ConfigError("budget must be at least 1")
    spec = CHECKS[target]
    fname, hname = (f if isinstance(f, str) else f.name), (h if isinstance(h, str) else h.name)
    f, h = _resolve((fname, hname))
    if interval is None:
        lo, hi = f.domain_lo, f.domain_hi
        interval = (lo, hi) if math.isfinite(lo) and math.isfinite(hi) else (0.5, 2.0)
    m, M = interval
    left = _Budget(int(budget))
    trial = 0
    while left.left > 0:
        rng = np.random.default_rng(_cell_seed(seed, target, (fname, hname), dim, trial))
        inst = spec.generate(rng, f, h, dim, m, M, trial)
        rep = _violates(spec, f, h, inst, tol_rel, left)
        if rep:
            found = Counterexample(target, fname, hname, inst, rep, left.used, trial)
            return _shrink(spec, f, h, found, m, M, tol_rel, left)
        trial += 1
    return None


def _shrink(spec, f, h, cx: Counterexample, m, M, tol, budget: _Budget) -> Counterexample:
    improved = True
    while improved and budget.left > 0:
        improved = False
        for cand in _shrink_candidates(cx.instance, m, M):
            rep = _violates(spec, f, h, cand, tol, budget)
            if rep is None:
                break
            if rep:
                cx = Counterexample(cx.check, cx.f, cx.h, cand, rep, budget.used, cx.trial,
                                    cx.shrink_steps + 1)
                improved = True
                break
    cx.evaluations = budget.used
    return cx
