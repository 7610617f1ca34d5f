"""Positive linear maps between matrix algebras.

Only a closed set of constructors is offered (conjugation, pinching, convex
mixture, normalized trace), so every map built here is positive by
construction; non-positive maps simply cannot be expressed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DimensionError, NonUnitalError
from .matcore import HermitianMatrix, _arr, haar_frame, min_eig, spectral_norm
from .reports import PredicateReport, serialize_matrix

UNITAL_TOL = 1e-10
WEIGHT_TOL = 1e-12

EACH_UNITAL = "each_unital"
JOINTLY_UNITAL = "jointly_unital"


def _max_abs(a) -> float:
    return float(np.max(np.abs(a), initial=0.0))


@dataclass(frozen=True, eq=False)
class Conjugation:
    """A -> C* A C with C of shape (dim_in, dim_out).

    With ``isometry=True`` (the default) C must satisfy C*C = I, making the
    map unital.  Members of a jointly unital family pass ``isometry=False``
    and only need C*C <= I.
    """

    C: np.ndarray
    isometry: bool = True

    def __post_init__(self):
        c = np.array(self.C, dtype=complex if np.iscomplexobj(self.C) else float)
        if c.ndim == 1:
            c = c.reshape(-1, 1)
        if c.ndim != 2 or c.shape[1] > c.shape[0] and self.isometry:
            raise DimensionError(f"bad conjugation frame shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "C", c)
        gram = c.conj().T @ c
        if self.isometry:
            if _max_abs(gram - np.eye(c.shape[1])) > UNITAL_TOL:
                raise NonUnitalError("conjugation frame does not have orthonormal columns")
        elif np.linalg.eigvalsh(gram)[-1] > 1.0 + UNITAL_TOL:
            raise ValueError("conjugation frame must satisfy C*C <= I")

    @property
    def dim_in(self) -> int:
        return self.C.shape[0]

    @property
    def dim_out(self) -> int:
        return self.C.shape[1]

    def _apply(self, a: np.ndarray) -> np.ndarray:
        return self.C.conj().T @ a @ self.C

    def to_dict(self) -> dict:
        return {"variant": "conjugation", "C": serialize_matrix(self.C)}


@dataclass(frozen=True, eq=False)
class Pinching:
    """A -> sum_j P_j A P_j for orthogonal projections summing to I."""

    projections: tuple

    def __post_init__(self):
        ps = []
        for p in self.projections:
            p = np.array(p, dtype=complex if np.iscomplexobj(p) else float)
            p.setflags(write=False)
            ps.append(p)
        if not ps:
            raise ValueError("pinching needs at least one projection")
        n = ps[0].shape[0]
        for p in ps:
            if p.shape != (n, n):
                raise DimensionError("projections must share one square shape")
            if _max_abs(p @ p - p) > UNITAL_TOL or _max_abs(p - p.conj().T) > UNITAL_TOL:
                raise ValueError("pinching members must be orthogonal projections")
        if _max_abs(sum(ps) - np.eye(n)) > UNITAL_TOL:
            raise NonUnitalError("projections do not sum to the identity")
        object.__setattr__(self, "projections", tuple(ps))

    @classmethod
    def diagonal(cls, dim: int) -> "Pinching":
        return cls(tuple(np.diag(np.eye(dim)[k]) for k in range(dim)))

    @classmethod
    def from_frame(cls, u: np.ndarray, sizes: Sequence[int]) -> "Pinching":
        """Block projections onto consecutive column groups of a unitary u."""
        if sum(sizes) != u.shape[1]:
            raise DimensionError("block sizes must add up to the dimension")
        out, k = [], 0
        for s in sizes:
            v = u[:, k:k + s]
            out.append(v @ v.conj().T)
            k += s
        return cls(tuple(out))

    @property
    def dim_in(self) -> int:
        return self.projections[0].shape[0]

    dim_out = dim_in

    def _apply(self, a):
        return sum(p @ a @ p for p in self.projections)

    def to_dict(self) -> dict:
        return {"variant": "pinching",
                "projections": [serialize_matrix(p) for p in self.projections]}


@dataclass(frozen=True, eq=False)
class NormalizedTrace:
    """A -> (tr A / n) as a 1x1 matrix."""

    dim: int

    @property
    def dim_in(self) -> int:
        return self.dim

    @property
    def dim_out(self) -> int:
        return 1

    def _apply(self, a):
        return np.array([[np.trace(a).real / self.dim]])

    def to_dict(self) -> dict:
        return {"variant": "normalized_trace", "dim": self.dim}


@dataclass(frozen=True, eq=False)
class Mixture:
    """Convex combination of maps with common input/output dimensions."""

    children: tuple
    weights: tuple

    def __post_init__(self):
        ch, w = tuple(self.children), tuple(float(x) for x in self.weights)
        if not ch or len(ch) != len(w):
            raise ValueError("mixture needs one weight per child")
        if any(x < 0 for x in w) or abs(sum(w) - 1.0) > WEIGHT_TOL:
            raise ValueError("mixture weights must be a probability vector")
        if len({(c.dim_in, c.dim_out) for c in ch}) != 1:
            raise DimensionError("mixture children must share dimensions")
        object.__setattr__(self, "children", ch)
        object.__setattr__(self, "weights", w)

    @property
    def dim_in(self) -> int:
        return self.children[0].dim_in

    @property
    def dim_out(self) -> int:
        return self.children[0].dim_out

    def _apply(self, a):
        return sum(w * c._apply(a) for w, c in zip(self.weights, self.children))

    def to_dict(self) -> dict:
        return {"variant": "mixture", "weights": list(self.weights),
                "children": [c.to_dict() for c in self.children]}


PositiveMapSpec = Union[Conjugation, Pinching, NormalizedTrace, Mixture]


def identity_map(dim: int) -> Conjugation:
    return Conjugation(np.eye(dim))


def apply(phi: PositiveMapSpec, a) -> HermitianMatrix:
    a = _arr(a)
    if a.shape != (phi.dim_in, phi.dim_in):
        raise DimensionError(f"map expects {phi.dim_in}x{phi.dim_in} input, got {a.shape}")
    return HermitianMatrix(phi._apply(a), check=False)


def check_unital(phi: PositiveMapSpec) -> bool:
    out = phi._apply(np.eye(phi.dim_in))
    return _max_abs(out - np.eye(phi.dim_out)) <= UNITAL_TOL


def check_positive_spot(phi: PositiveMapSpec, trials: int = 100, seed=0) -> PredicateReport:
    """lambda_min(phi(A)) >= -1e-10 * scale for random PSD A (rank-deficient included)."""
    rng = np.random.default_rng(seed)
    n = phi.dim_in
    worst, witness = np.inf, ()
    for k in range(trials):
        rank = int(rng.integers(1, n + 1))
        g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
        a = g @ g.conj().T
        out = phi._apply(a)
        scale = max(1.0, spectral_norm(a))
        val = min_eig(out) / scale
        if val < worst:
            worst, witness = val, (k,)
    return PredicateReport(worst >= -1e-10, float(worst), witness, "positive", trials)


def random_isometry(dim_in: int, dim_out: int, seed=None, field: str = "complex") -> np.ndarray:
    """Frame C of shape (dim_in, dim_out) with C*C = I."""
    if dim_out > dim_in:
        raise DimensionError(f"isometry needs dim_out <= dim_in, got {dim_out} > {dim_in}")
    return haar_frame(dim_in, dim_out, np.random.default_rng(seed), field)


@dataclass(frozen=True, eq=False)
class MapFamily:
    maps: tuple
    mode: str = EACH_UNITAL

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("a map family needs at least one member")
        if len({(p.dim_in, p.dim_out) for p in maps}) != 1:
            raise DimensionError("family members must share dimensions")
        object.__setattr__(self, "maps", maps)
        if self.mode == EACH_UNITAL:
            if not all(check_unital(p) for p in maps):
                raise NonUnitalError("each_unital family has a non-unital member")
        elif self.mode == JOINTLY_UNITAL:
            total = sum(p._apply(np.eye(p.dim_in)) for p in maps)
            if _max_abs(total - np.eye(maps[0].dim_out)) > UNITAL_TOL:
                raise NonUnitalError("family members do not sum to a unital map")
        else:
            raise ValueError(f"unknown family mode {self.mode!r}")

    def __len__(self):
        return len(self.maps)

    @property
    def dim_in(self) -> int:
        return self.maps[0].dim_in

    @property
    def dim_out(self) -> int:
        return self.maps[0].dim_out

    def to_dict(self) -> dict:
        return {"mode": self.mode, "maps": [p.to_dict() for p in self.maps]}


def _random_member(kind: str, dim_in: int, dim_out: int, rng, field: str):
    if kind == "pinching":
        if dim_in != dim_out:
            raise DimensionError("pinching requires dim_in == dim_out")
        u = haar_frame(dim_in, dim_in, rng, field)
        blocks = int(rng.integers(1, dim_in + 1))
        cuts = np.sort(rng.choice(np.arange(1, dim_in), size=blocks - 1, replace=False))
        sizes = np.diff(np.concatenate([[0], cuts, [dim_in]])).astype(int)
        return Pinching.from_frame(u, [int(s) for s in sizes])
    if kind == "conjugation":
        return Conjugation(haar_frame(dim_in, dim_out, rng, field))
    if kind == "trace":
        if dim_out != 1:
            raise DimensionError("normalized trace maps to dimension 1")
        return NormalizedTrace(dim_in)
    if kind == "mixture":
        k = int(rng.integers(2, 4))
        sub = "pinching" if dim_in == dim_out else "conjugation"
        children = [_random_member(sub if j % 2 else "conjugation", dim_in, dim_out, rng, field)
                    for j in range(k)]
        w = rng.dirichlet(np.ones(k))
        w[-1] = 1.0 - float(np.sum(w[:-1]))
        return Mixture(tuple(children), tuple(w))
    raise ValueError(f"unknown map kind {kind!r}")


def random_family(n: int, dim_in: int, dim_out: int, mode: str = JOINTLY_UNITAL, seed=None,
                  kinds: Sequence[str] = ("conjugation", "pinching", "mixture"),
                  field: str = "complex") -> MapFamily:
    """Random family of n maps satisfying the unitality mode.

    jointly_unital: C_j = V_j D_j with V_j isometries and positive diagonal D_j
    chosen so that sum_j D_j^2 = I, hence sum_j C_j* C_j = I.
    each_unital: members cycle through ``kinds`` (pinchings need dim_in == dim_out).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if dim_out > dim_in:
        raise DimensionError(f"infeasible dimensions {dim_in} -> {dim_out}")
    rng = np.random.default_rng(seed)
    if mode == JOINTLY_UNITAL:
        shares = rng.dirichlet(np.ones(n), size=dim_out).T  # (n, dim_out), columns sum to 1
        shares[-1] = 1.0 - shares[:-1].sum(axis=0)
        maps = []
        for j in range(n):
            v = haar_frame(dim_in, dim_out, rng, field)
            maps.append(Conjugation(v * np.sqrt(np.clip(shares[j], 0.0, None)), isometry=False))
        return MapFamily(tuple(maps), JOINTLY_UNITAL)
    if mode == EACH_UNITAL:
        usable = [k for k in kinds if not (k == "pinching" and dim_in != dim_out)
                  and not (k == "trace" and dim_out != 1)]
        if not usable:
            raise DimensionError("no requested map kind fits these dimensions")
        maps = [_random_member(usable[j % len(usable)], dim_in, dim_out, rng, field)
                for j in range(n)]
        return MapFamily(tuple(maps), EACH_UNITAL)
    raise ValueError(f"unknown family mode {mode!r}")


def family_from_frames(frames: Sequence[np.ndarray]) -> MapFamily:
    """Jointly unital family from explicit C_j with sum C_j* C_j = I."""
    return MapFamily(tuple(Conjugation(c, isometry=False) for c in frames), JOINTLY_UNITAL)
