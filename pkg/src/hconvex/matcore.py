"""Hermitian matrices: spectral decomposition, functional calculus, Loewner order.

Finite Hermitian matrices stand in for self-adjoint operators.  Real
symmetric input stays real; complex input is kept complex.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import (DegenerateError, DimensionError, DomainError, NonConvergenceError,
                     NotHermitianError)
from .reports import IneqReport, serialize_matrix

DEFAULT_TOL_REL = 1e-9
DEFAULT_MAX_DIM = 64
HERMITIAN_TOL = 1e-12
SPECTRUM_TOL = 1e-12


class HermitianMatrix:
    """Immutable Hermitian matrix.

    Inputs within ``1e-12 * max(1, max|a_ij|)`` of Hermitian are symmetrized
    silently; anything further off is rejected.
    """

    __slots__ = ("data",)

    def __init__(self, entries, *, max_dim: int = DEFAULT_MAX_DIM, check: bool = True):
        if isinstance(entries, HermitianMatrix):
            object.__setattr__(self, "data", entries.data)
            return
        a = np.array(entries, dtype=complex if np.iscomplexobj(entries) else float)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] > max_dim:
            raise DimensionError(f"dimension {a.shape[0]} exceeds the cap {max_dim}")
        if check:
            scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
            skew = float(np.max(np.abs(a - a.conj().T), initial=0.0))
            if skew > HERMITIAN_TOL * scale:
                raise NotHermitianError(f"matrix is not Hermitian (max |A - A*| = {skew:.3g})")
        a = 0.5 * (a + a.conj().T)
        if np.iscomplexobj(a) and not np.any(a.imag):
            a = a.real.copy()
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    def __setattr__(self, key, value):
        raise AttributeError("HermitianMatrix is immutable")

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __repr__(self):
        return f"HermitianMatrix({self.data!r})"

    def __add__(self, other):
        return HermitianMatrix(self.data + _arr(other), check=False)

    __radd__ = __add__

    def __sub__(self, other):
        return HermitianMatrix(self.data - _arr(other), check=False)

    def __rsub__(self, other):
        return HermitianMatrix(_arr(other) - self.data, check=False)

    def __neg__(self):
        return HermitianMatrix(-self.data, check=False)

    def __mul__(self, c):
        if not np.isscalar(c) or np.iscomplexobj(c):
            return NotImplemented
        return HermitianMatrix(float(c) * self.data, check=False)

    __rmul__ = __mul__

    def to_list(self) -> list:
        return serialize_matrix(self.data)


Matrixish = Union[HermitianMatrix, np.ndarray, list]


def _arr(a) -> np.ndarray:
    return a.data if isinstance(a, HermitianMatrix) else np.asarray(a)


def as_hermitian(a: Matrixish) -> HermitianMatrix:
    return a if isinstance(a, HermitianMatrix) else HermitianMatrix(a)


@dataclass(frozen=True)
class SpectralDecomp:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def eig_h(a: Matrixish) -> SpectralDecomp:
    """Eigen-decomposition with ascending eigenvalues (LAPACK ``heevd``)."""
    a = as_hermitian(a).data
    try:
        w, u = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NonConvergenceError(f"eigensolver failed: {exc}") from exc
    return SpectralDecomp(w, u)


def _domain_of(phi):
    lo = getattr(phi, "domain_lo", None)
    hi = getattr(phi, "domain_hi", None)
    if lo is None or hi is None:
        return None
    return (lo, getattr(phi, "lo_closed", True), hi, getattr(phi, "hi_closed", True))


def mat_func(phi: Callable, a: Matrixish) -> HermitianMatrix:
    """phi(A) = U phi(Lambda) U*.

    If ``phi`` declares a domain (ScalarFunction, HFunction), eigenvalues that
    miss a closed endpoint by roundoff are snapped onto it; larger escapes
    raise :class:`DomainError`.
    """
    dec = eig_h(a)
    lam = dec.eigenvalues.copy()
    dom = _domain_of(phi)
    if dom is not None:
        lo, lo_closed, hi, hi_closed = dom
        slack = SPECTRUM_TOL * max(1.0, float(np.max(np.abs(lam), initial=0.0)))
        if lo_closed and np.isfinite(lo):
            lam = np.where((lam < lo) & (lam >= lo - slack), lo, lam)
        if hi_closed and np.isfinite(hi):
            lam = np.where((lam > hi) & (lam <= hi + slack), hi, lam)
        below = lam < lo if lo_closed else lam <= lo
        above = lam > hi if hi_closed else lam >= hi
        if np.any(below | above):
            name = getattr(phi, "name", "phi")
            raise DomainError(f"spectrum {lam} escapes the domain of {name}")
    vals = np.asarray(phi(lam), dtype=float)
    if vals.shape != lam.shape:
        vals = np.array([float(phi(x)) for x in lam])
    u = dec.eigenvectors
    return HermitianMatrix((u * vals) @ u.conj().T, check=False)


def spectral_norm(a: Matrixish) -> float:
    w = np.linalg.eigvalsh(_arr(a))
    return float(np.max(np.abs(w), initial=0.0))


def min_eig(a: Matrixish) -> float:
    return float(np.linalg.eigvalsh(_arr(a))[0])


def loewner_leq(a: Matrixish, b: Matrixish, tol_rel: float = DEFAULT_TOL_REL):
    """Return ``(A <= B, lambda_min(B - A))`` with a norm-scaled tolerance."""
    a, b = _arr(a), _arr(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    gap = min_eig(b - a)
    scale = max(1.0, spectral_norm(a), spectral_norm(b))
    return gap >= -tol_rel * scale, gap


def loewner_report(lhs, rhs, lhs_tag: str, rhs_tag: str, tol_rel: float = DEFAULT_TOL_REL,
                   witness=None, details=None) -> IneqReport:
    lhs, rhs = _arr(lhs), _arr(rhs)
    if lhs.shape != rhs.shape:
        raise DimensionError(f"shape mismatch {lhs.shape} vs {rhs.shape}")
    gap = min_eig(rhs - lhs)
    scale = max(1.0, spectral_norm(lhs), spectral_norm(rhs))
    return IneqReport.from_gap(lhs_tag, rhs_tag, gap, tol_rel * scale, witness, details)


def spectrum_in(a: Matrixish, m: float, M: float) -> bool:
    if not m < M:
        raise DegenerateError(f"need m < M, got [{m}, {M}]")
    w = np.linalg.eigvalsh(_arr(a))
    slack = SPECTRUM_TOL * max(1.0, abs(m), abs(M))
    return bool(w[0] >= m - slack and w[-1] <= M + slack)


def haar_frame(rows: int, cols: int, rng: np.random.Generator, field: str = "complex"):
    """Orthonormal columns from the QR factor of a Gaussian matrix (phase-fixed)."""
    if cols > rows:
        raise DimensionError(f"cannot fit {cols} orthonormal columns in dimension {rows}")
    z = rng.standard_normal((rows, cols))
    if field == "complex":
        z = z + 1j * rng.standard_normal((rows, cols))
    elif field != "real":
        raise ValueError(f"field must be 'real' or 'complex', got {field!r}")
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def rand_hermitian(dim: int, m: float, M: float, seed=None,
                   field: str = "complex") -> HermitianMatrix:
    """U diag(lambda) U* with lambda ~ Uniform[m, M] and Haar-distributed U."""
    if dim < 1:
        raise DimensionError("dim must be at least 1")
    if not m < M:
        raise DegenerateError(f"need m < M, got [{m}, {M}]")
    rng = np.random.default_rng(seed)
    lam = rng.uniform(m, M, dim)
    u = haar_frame(dim, dim, rng, field)
    return HermitianMatrix((u * lam) @ u.conj().T, check=False)


@dataclass(frozen=True)
class SecantCoeffs:
    """Chord of phi through (m, phi(m)) and (M, phi(M)): l(t) = mu t + nu."""

    mu: float
    nu: float
    m: float
    M: float

    def __call__(self, t):
        return self.mu * np.asarray(t, dtype=float) + self.nu


def secant_coeffs(phi: Callable, m: float, M: float) -> SecantCoeffs:
    if not m < M:
        raise DegenerateError(f"need m < M, got [{m}, {M}]")
    pm, pM = float(phi(m)), float(phi(M))
    return SecantCoeffs((pM - pm) / (M - m), (M * pm - m * pM) / (M - m), float(m), float(M))
