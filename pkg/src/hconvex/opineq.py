"""Operator inequalities for h-convex functions of Hermitian matrices.

Every checker returns a report whose ``details["hypotheses"]`` separates what
was merely declared (catalog certifications, structural flags of h) from what
was verified numerically on the given inputs (unitality, spectra, weights).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateError, DimensionError, DomainError, NonUnitalError
from .hclass import (CONCAVE, CONVEX, OPERATOR_CONVEX, OPERATOR_H_CONCAVE, OPERATOR_H_CONVEX,
                     OPERATOR_H_MID_CONVEX, STRICTLY_CONCAVE, STRICTLY_CONVEX,
                     SUBMULTIPLICATIVE, SUPERMULTIPLICATIVE, HFunction, ScalarFunction,
                     is_certified)
from .matcore import (DEFAULT_TOL_REL, HermitianMatrix, _arr, as_hermitian, mat_func,
                      min_eig, secant_coeffs, spectral_norm, spectrum_in)
from .posmaps import (EACH_UNITAL, JOINTLY_UNITAL, Conjugation, MapFamily, apply,
                      check_unital)
from .reports import IneqReport, Verdict, combine, to_jsonable
from .scalar_ineq import WeightVector, _is_identity

GRID_POINTS = 2049
GOLDEN_TOL = 1e-8
BISECT_TOL = 1e-10
BOUND_TOL = 1e-9
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _hyp(declared: dict, verified: dict) -> dict:
    return {"declared": declared, "verified": verified}


def _cert(f, h, *flags) -> dict:
    return {fl: is_certified(f, h, fl) for fl in flags}


def _weights(w, strict: bool = True) -> np.ndarray:
    w = w if isinstance(w, WeightVector) else WeightVector(w)
    if strict and np.any(w.weights <= 0):
        raise ValueError("weights must be strictly positive")
    return w.weights


def _mats(As) -> list:
    if isinstance(As, (HermitianMatrix, np.ndarray)) and np.ndim(_arr(As)) == 2:
        As = [As]
    out = [as_hermitian(a) for a in As]
    if len({a.dim for a in out}) != 1:
        raise DimensionError("all operators must share one dimension")
    return out


def _name(obj) -> str:
    return getattr(obj, "name", "f")


def _eye(n: int) -> np.ndarray:
    return np.eye(n)


def _report(lhs, rhs, lhs_tag, rhs_tag, tol_rel, witness, details) -> IneqReport:
    lhs, rhs = _arr(lhs), _arr(rhs)
    if lhs.shape != rhs.shape:
        raise DimensionError(f"shape mismatch {lhs.shape} vs {rhs.shape}")
    gap = min_eig(rhs - lhs)
    scale = max(1.0, spectral_norm(lhs), spectral_norm(rhs))
    return IneqReport.from_gap(lhs_tag, rhs_tag, gap, tol_rel * scale, witness, details)


# ---------------------------------------------------------------------------
# Jensen type inequalities


def check_op_hmid(f: ScalarFunction, h: HFunction, A, B,
                  tol_rel: float = DEFAULT_TOL_REL) -> IneqReport:
    """f((A+B)/2) <= h(1/2) f(A) + h(1/2) f(B)."""
    A, B = as_hermitian(A), as_hermitian(B)
    if A.dim != B.dim:
        raise DimensionError("A and B must share one dimension")
    lhs = mat_func(f, 0.5 * (_arr(A) + _arr(B)))
    rhs = float(h(0.5)) * (_arr(mat_func(f, A)) + _arr(mat_func(f, B)))
    details = {"f": _name(f), "h": h.name, "anchor": "operator h-mid-convexity",
               "hypotheses": _hyp(_cert(f, h, OPERATOR_H_MID_CONVEX), {})}
    return _report(lhs, rhs, "f((A+B)/2)", "h(1/2)(f(A)+f(B))", tol_rel,
                   {"A": A.to_list(), "B": B.to_list()}, details)


def check_jensen_contraction(f: ScalarFunction, h: HFunction, As, family: MapFamily,
                             tol_rel: float = DEFAULT_TOL_REL) -> IneqReport:
    """f(sum C_j* A_j C_j) <= 2h(1/2) sum C_j* f(A_j) C_j with sum C_j* C_j = I."""
    As = _mats(As)
    if not all(isinstance(p, Conjugation) for p in family.maps):
        raise ValueError("the contraction form needs conjugation maps")
    if len(family) != len(As):
        raise DimensionError("one operator per conjugation is required")
    total = sum(p.C.conj().T @ p.C for p in family.maps)
    if np.max(np.abs(total - _eye(family.dim_out))) > 1e-10:
        raise NonUnitalError("sum C_j* C_j differs from the identity")
    X = sum(p._apply(_arr(a)) for p, a in zip(family.maps, As))
    lhs = mat_func(f, X)
    rhs = 2.0 * float(h(0.5)) * sum(p._apply(_arr(mat_func(f, a)))
                                    for p, a in zip(family.maps, As))
    declared = _cert(f, h, OPERATOR_H_MID_CONVEX)
    declared[SUPERMULTIPLICATIVE] = SUPERMULTIPLICATIVE in h.flags
    details = {"f": _name(f), "h": h.name, "anchor": "operator Jensen, contraction form",
               "n": len(As), "hypotheses": _hyp(declared, {"sum_CC_identity": True})}
    witness = {"As": [a.to_list() for a in As], "family": family.to_dict()}
    return _report(lhs, rhs, "f(sum C*AC)", "2h(1/2) sum C*f(A)C", tol_rel, witness, details)


def check_dcj(f: ScalarFunction, h: HFunction, phi, A,
              tol_rel: float = DEFAULT_TOL_REL) -> IneqReport:
    """Davis-Choi-Jensen form f(Phi(A)) <= 2h(1/2) Phi(f(A)) for unital positive Phi."""
    if not check_unital(phi):
        raise NonUnitalError("Phi(I) != I")
    A = as_hermitian(A)
    lhs = mat_func(f, apply(phi, A))
    rhs = 2.0 * float(h(0.5)) * _arr(apply(phi, mat_func(f, A)))
    details = {"f": _name(f), "h": h.name, "anchor": "Davis-Choi-Jensen",
               "factor": 2.0 * float(h(0.5)),
               "hypotheses": _hyp(_cert(f, h, OPERATOR_H_CONVEX), {"unital": True})}
    return _report(lhs, rhs, "f(Phi(A))", "2h(1/2) Phi(f(A))", tol_rel,
                   {"A": A.to_list(), "phi": phi.to_dict()}, details)


def _reverse_mode(f, h, reverse):
    if reverse is None:
        return (isinstance(f, ScalarFunction) and OPERATOR_H_CONCAVE in f.flags
                and SUBMULTIPLICATIVE in h.flags)
    return bool(reverse)


def check_weighted_jensen(f: ScalarFunction, h: HFunction, As, w,
                          tol_rel: float = DEFAULT_TOL_REL,
                          reverse: Optional[bool] = None) -> IneqReport:
    """f(sum t_j A_j) <= sum h(t_j) f(A_j); reversed for operator h-concave f."""
    As = _mats(As)
    t = _weights(w)
    if t.size != len(As):
        raise DimensionError("one weight per operator is required")
    X = sum(tj * _arr(a) for tj, a in zip(t, As))
    fx = _arr(mat_func(f, X))
    s = sum(float(h(tj)) * _arr(mat_func(f, a)) for tj, a in zip(t, As))
    rev = _reverse_mode(f, h, reverse)
    declared = _cert(f, h, OPERATOR_H_CONCAVE if rev else OPERATOR_H_CONVEX)
    declared[SUBMULTIPLICATIVE if rev else SUPERMULTIPLICATIVE] = (
        (SUBMULTIPLICATIVE if rev else SUPERMULTIPLICATIVE) in h.flags)
    details = {"f": _name(f), "h": h.name, "anchor": "weighted operator Jensen",
               "reversed": rev, "hypotheses": _hyp(declared, {"weights_sum_to_one": True})}
    witness = {"As": [a.to_list() for a in As], "t": t}
    if rev:
        return _report(s, fx, "sum h(t) f(A)", "f(sum t A)", tol_rel, witness, details)
    return _report(fx, s, "f(sum t A)", "sum h(t) f(A)", tol_rel, witness, details)


def check_cor_weighted_dcj(f: ScalarFunction, h: HFunction, phi, As, w,
                           tol_rel: float = DEFAULT_TOL_REL,
                           reverse: Optional[bool] = None) -> IneqReport:
    """f(sum t_j Phi(A_j)) <= sum 2h(t_j/2) Phi(f(A_j)) for unital positive Phi."""
    if not check_unital(phi):
        raise NonUnitalError("Phi(I) != I")
    As = _mats(As)
    t = _weights(w)
    if t.size != len(As):
        raise DimensionError("one weight per operator is required")
    X = sum(tj * _arr(apply(phi, a)) for tj, a in zip(t, As))
    fx = _arr(mat_func(f, X))
    s = sum(2.0 * float(h(tj / 2.0)) * _arr(apply(phi, mat_func(f, a))) for tj, a in zip(t, As))
    rev = _reverse_mode(f, h, reverse)
    declared = _cert(f, h, OPERATOR_H_CONCAVE if rev else OPERATOR_H_CONVEX)
    declared[SUPERMULTIPLICATIVE] = SUPERMULTIPLICATIVE in h.flags
    details = {"f": _name(f), "h": h.name, "anchor": "weighted Davis-Choi-Jensen",
               "reversed": rev,
               "hypotheses": _hyp(declared, {"unital": True, "weights_sum_to_one": True})}
    witness = {"As": [a.to_list() for a in As], "t": t, "phi": phi.to_dict()}
    if rev:
        return _report(s, fx, "sum 2h(t/2) Phi(f(A))", "f(sum t Phi(A))", tol_rel, witness,
                       details)
    return _report(fx, s, "f(sum t Phi(A))", "sum 2h(t/2) Phi(f(A))", tol_rel, witness, details)


# ---------------------------------------------------------------------------
# Mercer type chain


def _as_family(family) -> MapFamily:
    if isinstance(family, MapFamily):
        return family
    return MapFamily(tuple(family), EACH_UNITAL)


def _check_spectra(As, m, M):
    for k, a in enumerate(As):
        if not spectrum_in(a, m, M):
            raise DomainError(f"spectrum of operator {k} is not inside [{m}, {M}]")


def _aggregate(f, h, family: MapFamily, As, w):
    """X and S = sum c_j Phi_j(f(A_j)).

    Each-unital families use X = sum t_j Phi_j(A_j) and c_j = h(t_j); in a
    jointly unital family the weights are absorbed into the maps, so
    X = sum Phi_j(A_j) and c_j = 1.
    """
    if len(family) != len(As):
        raise DimensionError("one operator per map is required")
    if family.mode == JOINTLY_UNITAL:
        t = np.ones(len(As))
        coeff = np.ones(len(As))
    else:
        t = _weights(w)
        if t.size != len(As):
            raise DimensionError("one weight per operator is required")
        coeff = np.array([float(h(tj)) for tj in t])
    X = sum(tj * _arr(apply(p, a)) for tj, p, a in zip(t, family.maps, As))
    S = sum(c * _arr(apply(p, mat_func(f, a))) for c, p, a in zip(coeff, family.maps, As))
    return HermitianMatrix(X, check=False), HermitianMatrix(S, check=False), t, coeff


def _require_h_unit(h: HFunction):
    if not np.all(h.contains([0.0, 1.0])):
        raise DomainError(f"{h.name} must be defined on all of [0, 1]")


@dataclass(frozen=True)
class MercerChainReport:
    lhs: HermitianMatrix
    mid: HermitianMatrix
    rhs: HermitianMatrix
    gap1: float
    gap2: float
    outer_gap: float
    tolerance_used: float
    verdict: Verdict
    witness: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def gap_min_eig(self) -> float:
        return min(self.gap1, self.gap2)

    def as_ineq_report(self) -> IneqReport:
        return IneqReport("f(mI+MI-X)", "(mu_h+2nu_h)(f(m)+f(M))I - sum h(t)Phi(f(A))",
                          self.gap_min_eig, self.tolerance_used, self.verdict, self.witness,
                          dict(self.details, gap1=self.gap1, gap2=self.gap2,
                               outer_gap=self.outer_gap))

    def to_dict(self, include_witness: bool = True) -> dict:
        out = {"lhs": self.lhs.to_list(), "mid": self.mid.to_list(), "rhs": self.rhs.to_list(),
               "gap1": self.gap1, "gap2": self.gap2, "outer_gap": self.outer_gap,
               "tolerance": self.tolerance_used, "verdict": self.verdict.value,
               "details": to_jsonable(self.details)}
        if include_witness:
            out["witness"] = to_jsonable(self.witness)
        return out


def check_mercer_operator(f: ScalarFunction, h: HFunction, family, As, w, m: float, M: float,
                          tol_rel: float = DEFAULT_TOL_REL) -> MercerChainReport:
    """f(mI+MI-X) <= h((X-mI)/(M-m)) f(m) + h((MI-X)/(M-m)) f(M)
                  <= (mu_h + 2 nu_h)(f(m)+f(M)) I - sum h(t_j) Phi_j(f(A_j)).

    For a jointly unital family the weights are absorbed into the maps.
    """
    if not m < M:
        raise DegenerateError(f"need m < M, got [{m}, {M}]")
    _require_h_unit(h)
    family = _as_family(family)
    As = _mats(As)
    _check_spectra(As, m, M)
    X, S, t, coeff = _aggregate(f, h, family, As, w)
    n = X.dim
    I = _eye(n)
    fm, fM = float(f(m)), float(f(M))
    sh = secant_coeffs(h, 0.0, 1.0)
    x = _arr(X)
    lhs = mat_func(f, (m + M) * I - x)
    mid = HermitianMatrix(_arr(mat_func(h, (x - m * I) / (M - m))) * fm
                          + _arr(mat_func(h, (M * I - x) / (M - m))) * fM, check=False)
    rhs = HermitianMatrix((sh.mu + 2.0 * sh.nu) * (fm + fM) * I - _arr(S), check=False)
    gap1 = min_eig(_arr(mid) - _arr(lhs))
    gap2 = min_eig(_arr(rhs) - _arr(mid))
    outer = min_eig(_arr(rhs) - _arr(lhs))
    scale = max(1.0, spectral_norm(lhs), spectral_norm(mid), spectral_norm(rhs))
    tol = tol_rel * scale
    if np.isnan(gap1) or np.isnan(gap2):
        verdict = Verdict.VIOLATED
    else:
        verdict = Verdict.HOLDS if gap1 >= -tol and gap2 >= -tol else Verdict.VIOLATED
    declared = _cert(f, h, OPERATOR_H_CONVEX)
    declared.update({SUPERMULTIPLICATIVE: SUPERMULTIPLICATIVE in h.flags,
                     OPERATOR_CONVEX: OPERATOR_CONVEX in h.flags})
    verified = {"spectra_in_interval": True, "h_defined_on_unit_interval": True,
                "unitality": family.mode}
    details = {"f": _name(f), "h": h.name, "m": m, "M": M, "n": len(As), "mode": family.mode,
               "mu_h": sh.mu, "nu_h": sh.nu,
               "anchor": ("jointly unital Mercer chain" if family.mode == JOINTLY_UNITAL
                          else "operator Mercer chain"),
               "transitive": bool(outer >= -tol) if verdict is Verdict.HOLDS else None,
               "hypotheses": _hyp(declared, verified)}
    if _is_identity(h):
        mid_c = ((x - m * I) * fm + (M * I - x) * fM) / (M - m)
        rhs_c = (fm + fM) * I - _arr(S)
        details["identity_h_residual"] = float(max(np.max(np.abs(mid_c - _arr(mid))),
                                                   np.max(np.abs(rhs_c - _arr(rhs)))))
    witness = {"As": [a.to_list() for a in As], "t": t, "family": family.to_dict()}
    return MercerChainReport(lhs, mid, rhs, float(gap1), float(gap2), float(outer), tol,
                             verdict, witness, details)


# ---------------------------------------------------------------------------
# complementary Jensen constants


@dataclass(frozen=True)
class PsiParams:
    """Coefficients of Psi(t) = mu_h(mu_f t + nu_f) + nu_h(f(m)+f(M)) - alpha g(t)."""

    mu_h: float
    nu_h: float
    mu_f: float
    nu_f: float
    f_m: float
    f_M: float
    alpha: float
    m: float
    M: float

    @classmethod
    def from_functions(cls, f, h: HFunction, alpha: float, m: float, M: float) -> "PsiParams":
        if not m < M:
            raise DegenerateError(f"need m < M, got [{m}, {M}]")
        _require_h_unit(h)
        sf = secant_coeffs(f, m, M)
        sh = secant_coeffs(h, 0.0, 1.0)
        return cls(sh.mu, sh.nu, sf.mu, sf.nu, float(f(m)), float(f(M)), float(alpha),
                   float(m), float(M))

    def affine(self, t):
        t = np.asarray(t, dtype=float)
        return self.mu_h * (self.mu_f * t + self.nu_f) + self.nu_h * (self.f_m + self.f_M)

    def to_dict(self) -> dict:
        return {"mu_h": self.mu_h, "nu_h": self.nu_h, "mu_f": self.mu_f, "nu_f": self.nu_f,
                "f_m": self.f_m, "f_M": self.f_M}


@dataclass(frozen=True)
class ComplementaryConstants:
    alpha: float
    beta: float
    t_star: float
    psi_desc: dict

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "t_star": self.t_star,
                "psi": self.psi_desc}


def psi_eval(params: PsiParams, g, t):
    """Psi at t (scalar or array) in [m, M]."""
    t_arr = np.asarray(t, dtype=float)
    slack = 1e-12 * max(1.0, abs(params.m), abs(params.M))
    if np.any(t_arr < params.m - slack) or np.any(t_arr > params.M + slack):
        raise DomainError(f"t must lie in [{params.m}, {params.M}]")
    t_arr = np.clip(t_arr, params.m, params.M)
    out = params.affine(t_arr) - params.alpha * np.asarray(g(t_arr), dtype=float)
    return float(out) if out.ndim == 0 else out


def golden_max(fn, a: float, b: float, tol: float = GOLDEN_TOL):
    """Maximize a unimodal fn on [a, b]; returns (argmax, max)."""
    c, d = b - _INVPHI * (b - a), a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    t = 0.5 * (a + b)
    return t, fn(t)


def beta_compute(f, g, h: HFunction, alpha: float, m: float, M: float) -> ComplementaryConstants:
    """beta = max over [m, M] of Psi: grid scan, then golden section on the best cell."""
    params = PsiParams.from_functions(f, h, alpha, m, M)
    grid = np.linspace(m, M, GRID_POINTS)
    vals = psi_eval(params, g, grid)
    k = int(np.argmax(vals))
    best_t, best = float(grid[k]), float(vals[k])
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, GRID_POINTS - 1)]
    t_gs, v_gs = golden_max(lambda s: psi_eval(params, g, s), float(lo), float(hi))
    if v_gs > best:
        best_t, best = t_gs, v_gs
    # cross-check against a fresh evaluation at the reported argmax
    if abs(psi_eval(params, g, best_t) - best) > 1e-12 * max(1.0, abs(best)):
        raise ArithmeticError("beta disagrees with Psi at its argmax")
    return ComplementaryConstants(float(alpha), best, best_t, params.to_dict())


def t0_compute(f: ScalarFunction, h: HFunction, alpha: float, m: float, M: float) -> float:
    """Maximizer of Psi with g = f via the three-case rule on f'."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if not m < M:
        raise DegenerateError(f"need m < M, got [{m}, {M}]")
    df = getattr(f, "derivative", None)
    if df is None:
        raise ValueError(f"{_name(f)} has no derivative")
    probe = np.asarray(df(np.linspace(m, M, 257)), dtype=float)
    if np.any(np.diff(probe) < -1e-12 * max(1.0, float(np.max(np.abs(probe))))):
        raise ValueError(f"derivative of {_name(f)} is not increasing on [{m}, {M}]")
    params = PsiParams.from_functions(f, h, alpha, m, M)
    target = params.mu_h * params.mu_f
    if alpha * float(df(m)) >= target:
        return float(m)
    if alpha * float(df(M)) <= target:
        return float(M)
    lo, hi = float(m), float(M)
    while hi - lo > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if alpha * float(df(mid)) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _alpha_g_shape(g, alpha: float):
    """('concave' | 'strictly_convex' | None) for the function alpha * g."""
    flags = getattr(g, "flags", frozenset())
    concave = alpha == 0 or (alpha > 0 and CONCAVE in flags) or (alpha < 0 and CONVEX in flags)
    strict = ((alpha > 0 and STRICTLY_CONVEX in flags)
              or (alpha < 0 and STRICTLY_CONCAVE in flags))
    if concave:
        return "concave"
    if strict and getattr(g, "derivative", None) is not None:
        return "strictly_convex"
    return None


def _beta_bounds(consts: ComplementaryConstants, params: PsiParams, f, g, alpha) -> list:
    shape = _alpha_g_shape(g, alpha)
    out = []
    tail = params.nu_h * (params.f_m + params.f_M)
    ends = (params.m, params.M)
    if shape == "concave":
        lower = max(params.mu_h * float(f(s)) + tail - alpha * float(g(s)) for s in ends)
        out.append(IneqReport.from_gap("endpoint bound", "beta", consts.beta - lower,
                                       BOUND_TOL * max(1.0, abs(lower)), {},
                                       {"bound": lower, "case": "alpha g concave"}))
    elif shape == "strictly_convex":
        for s in ends:
            upper = (params.mu_h * float(f(s)) - alpha * float(g(s))
                     + abs(params.mu_h * params.mu_f - alpha * float(g.derivative(s)))
                     * (params.M - params.m) + tail)
            out.append(IneqReport.from_gap("beta", f"slope bound at s={s}", upper - consts.beta,
                                           BOUND_TOL * max(1.0, abs(upper)), {},
                                           {"bound": upper, "s": s,
                                            "case": "alpha g strictly convex"}))
    return out


def check_complementary(f: ScalarFunction, g, h: HFunction, alpha: float, family, As, w,
                        m: float, M: float, tol_rel: float = DEFAULT_TOL_REL) -> IneqReport:
    """sum h(t_j) Phi_j(f(A_j)) <= alpha g(X) + beta I, plus the scalar bounds on beta."""
    family = _as_family(family)
    As = _mats(As)
    _check_spectra(As, m, M)
    consts = beta_compute(f, g, h, alpha, m, M)
    params = PsiParams.from_functions(f, h, alpha, m, M)
    X, S, t, _ = _aggregate(f, h, family, As, w)
    rhs = alpha * _arr(mat_func(g, X)) + consts.beta * _eye(X.dim)
    declared = _cert(f, h, OPERATOR_H_CONVEX)
    declared[OPERATOR_CONVEX] = OPERATOR_CONVEX in h.flags
    details = {"f": _name(f), "g": _name(g), "h": h.name, "alpha": alpha, "m": m, "M": M,
               "constants": consts.to_dict(), "beta_shape": _alpha_g_shape(g, alpha),
               "anchor": "complementary Jensen",
               "assumption": "the function in the t0 case rule is taken to be f",
               "hypotheses": _hyp(declared, {"spectra_in_interval": True,
                                             "unitality": family.mode})}
    witness = {"As": [a.to_list() for a in As], "t": t, "family": family.to_dict()}
    main = _report(S, rhs, "sum h(t) Phi(f(A))", "alpha g(X) + beta I", tol_rel, witness,
                   details)
    bounds = _beta_bounds(consts, params, f, g, alpha)
    if not bounds:
        return main
    merged = combine([main, *bounds], main.lhs_tag, main.rhs_tag, details)
    return IneqReport(merged.lhs_tag, merged.rhs_tag, merged.gap_min_eig,
                      merged.tolerance_used, merged.verdict, witness, merged.details)


def check_thm511_linear_F(f: ScalarFunction, g, h: HFunction, alpha: float, family, As, w,
                          m: float, M: float, tol_rel: float = DEFAULT_TOL_REL) -> IneqReport:
    """F[S, g(X)] <= max_t F[mu_h mu_f t + mu_h nu_f + nu_h(f(m)+f(M)), g(t)] I, F(u,v) = u - alpha v."""
    family = _as_family(family)
    As = _mats(As)
    _check_spectra(As, m, M)
    consts = beta_compute(f, g, h, alpha, m, M)
    X, S, t, _ = _aggregate(f, h, family, As, w)
    lhs = _arr(S) - alpha * _arr(mat_func(g, X))
    rhs = consts.beta * _eye(X.dim)
    declared = _cert(f, h, OPERATOR_H_CONVEX)
    declared[OPERATOR_CONVEX] = OPERATOR_CONVEX in h.flags
    details = {"f": _name(f), "g": _name(g), "h": h.name, "alpha": alpha,
               "F": "u - alpha v", "max_value": consts.beta, "t_star": consts.t_star,
               "anchor": "F-bound with linear F",
               "hypotheses": _hyp(declared, {"spectra_in_interval": True,
                                             "unitality": family.mode})}
    witness = {"As": [a.to_list() for a in As], "t": t, "family": family.to_dict()}
    return _report(lhs, rhs, "F[sum h(t) Phi(f(A)), g(X)]", "max F I", tol_rel, witness, details)
