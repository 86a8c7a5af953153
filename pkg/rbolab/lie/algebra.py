"""
Finite-dimensional Lie algebras by structure constants.

Only the brackets [e_i, e_j] with i < j are stored; the full antisymmetric
tensor is derived from them, so antisymmetry never has to be checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Mapping, Optional, Sequence, Tuple

import numpy as np

from ..kernel import DEFAULT_TOLERANCE, DimensionError, Tolerance, column_space
from ..log import get_logger
from ..report import CheckReport, combine, residual_report

logger = get_logger(__name__)


class ActionError(RuntimeError):
    """Raised when a map claimed to be an action by derivations is not one."""


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Lie algebra over a chosen basis; ``pairs`` maps (i, j), i < j, to the coordinates of [e_i, e_j]."""

    dim: int
    labels: Tuple[str, ...]
    pairs: Mapping[Tuple[int, int], np.ndarray] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise DimensionError("dimension must be nonnegative")
        if len(self.labels) != self.dim:
            raise DimensionError(f"expected {self.dim} labels, got {len(self.labels)}")
        for (i, j), vec in self.pairs.items():
            if not (0 <= i < j < self.dim):
                raise DimensionError(f"bracket index pair ({i}, {j}) must satisfy 0 <= i < j < {self.dim}")
            if np.shape(vec) != (self.dim,):
                raise DimensionError(f"bracket [{i}, {j}] must have {self.dim} coordinates")

    @classmethod
    def from_tensor(cls, C, labels: Optional[Sequence[str]] = None, name: str = "") -> "LieAlgebra":
        """Build from a full (dim, dim, dim) tensor, reading only the i < j entries."""
        C = np.asarray(C, dtype=float)
        n = C.shape[0]
        if C.shape != (n, n, n):
            raise DimensionError(f"structure tensor must be cubic, got shape {C.shape}")
        pairs = {
            (i, j): C[i, j].copy()
            for i, j in combinations(range(n), 2)
            if np.any(C[i, j] != 0.0)
        }
        labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(n))
        return cls(dim=n, labels=labels, pairs=pairs, name=name)

    @cached_property
    def structure(self) -> np.ndarray:
        """Full tensor C with [e_i, e_j] = Σ_k C[i, j, k] e_k."""
        C = np.zeros((self.dim, self.dim, self.dim))
        for (i, j), vec in self.pairs.items():
            C[i, j] = vec
            C[j, i] = -np.asarray(vec, dtype=float)
        return C

    @cached_property
    def ad(self) -> np.ndarray:
        """ad(e_i) as matrices: ad[i][k, j] = C[i, j, k]."""
        return np.transpose(self.structure, (0, 2, 1)).copy()

    def basis(self) -> np.ndarray:
        return np.eye(self.dim)

    def __repr__(self) -> str:
        label = self.name or "LieAlgebra"
        return f"<{label} dim={self.dim}>"


def bracket(a: LieAlgebra, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (a.dim,) or y.shape != (a.dim,):
        raise DimensionError(f"bracket arguments must have length {a.dim}")
    return np.einsum("i,j,ijk->k", x, y, a.structure)


def structure_residual(a: LieAlgebra, b: LieAlgebra) -> float:
    """Largest entrywise difference of two structure tensors in the same basis."""
    if a.dim != b.dim:
        return float("inf")
    if a.dim == 0:
        return 0.0
    return float(np.max(np.abs(a.structure - b.structure)))


def check_jacobi(a: LieAlgebra, tol: float = 1e-10) -> CheckReport:
    C = a.structure
    residual = 0.0
    for i, j, k in combinations(range(a.dim), 3):
        ij = C[i, j] @ C[:, k]
        jk = C[j, k] @ C[:, i]
        ki = C[k, i] @ C[:, j]
        residual = max(residual, float(np.linalg.norm(ij + jk + ki)))
    return residual_report("jacobi", residual, tol, algebra=a.name or repr(a))


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Linear map between two Lie algebras, as a codomain.dim × domain.dim matrix."""

    domain: LieAlgebra
    codomain: LieAlgebra
    m: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.m, dtype=float)
        if m.shape != (self.codomain.dim, self.domain.dim):
            raise DimensionError(
                f"linear map matrix must be {self.codomain.dim}x{self.domain.dim}, got {m.shape}"
            )
        object.__setattr__(self, "m", m)

    def __call__(self, x) -> np.ndarray:
        return self.m @ np.asarray(x, dtype=float)

    @classmethod
    def identity(cls, a: LieAlgebra) -> "LinearMap":
        return cls(a, a, np.eye(a.dim))


@dataclass(frozen=True, eq=False)
class ActionPhi:
    """φ: 𝔤 → Der(𝔥); ``mats[i]`` is φ(e_i) in the basis of 𝔥."""

    g: LieAlgebra
    h: LieAlgebra
    mats: np.ndarray

    def __post_init__(self) -> None:
        mats = np.asarray(self.mats, dtype=float).reshape(self.g.dim, self.h.dim, self.h.dim)
        object.__setattr__(self, "mats", mats)

    def __call__(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=float), self.mats, axes=1)

    @classmethod
    def adjoint(cls, a: LieAlgebra) -> "ActionPhi":
        return cls(a, a, a.ad)

    @classmethod
    def zero(cls, g: LieAlgebra, h: LieAlgebra) -> "ActionPhi":
        return cls(g, h, np.zeros((g.dim, h.dim, h.dim)))


@dataclass(frozen=True, eq=False)
class Representation:
    """ρ: algebra → gl(space_dim) given on basis elements."""

    algebra: LieAlgebra
    space_dim: int
    mats: np.ndarray

    def __post_init__(self) -> None:
        mats = np.asarray(self.mats, dtype=float).reshape(self.algebra.dim, self.space_dim, self.space_dim)
        object.__setattr__(self, "mats", mats)

    def __call__(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=float), self.mats, axes=1)


def _homomorphism_residual(mats: np.ndarray, C: np.ndarray) -> float:
    """max ‖ρ([e_i, e_j]) − [ρ(e_i), ρ(e_j)]‖ over basis pairs."""
    residual = 0.0
    for i, j in combinations(range(mats.shape[0]), 2):
        lhs = np.tensordot(C[i, j], mats, axes=1)
        rhs = mats[i] @ mats[j] - mats[j] @ mats[i]
        residual = max(residual, float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0)
    return residual


def check_representation(rep: Representation, tol: float = 1e-10) -> CheckReport:
    residual = _homomorphism_residual(rep.mats, rep.algebra.structure)
    return residual_report("representation", residual, tol)


def derivation_residual(D: np.ndarray, h: LieAlgebra) -> float:
    """max over basis pairs of ‖D[u,v] − [Du,v] − [u,Dv]‖."""
    if h.dim == 0:
        return 0.0
    C = h.structure
    lhs = np.einsum("kl,abl->abk", D, C)
    first = np.einsum("ca,cbk->abk", D, C)
    second = np.einsum("cb,ack->abk", D, C)
    return float(np.max(np.abs(lhs - first - second)))


def check_action(phi: ActionPhi, tol: float = 1e-10) -> CheckReport:
    """φ(x) are derivations of 𝔥 and φ is a homomorphism into gl(𝔥)."""
    derivation = max((derivation_residual(D, phi.h) for D in phi.mats), default=0.0)
    homomorphism = _homomorphism_residual(phi.mats, phi.g.structure)
    return combine(
        "action",
        [
            residual_report("derivation", derivation, tol),
            residual_report("homomorphism", homomorphism, tol),
        ],
    )


def semidirect_algebra(g: LieAlgebra, h: LieAlgebra, phi: ActionPhi, tol: float = 1e-9) -> LieAlgebra:
    """
    𝔤 ⋉_φ 𝔥 with the 𝔤 coordinates first:
    [x+u, y+v] = [x,y]_𝔤 + φ(x)v − φ(y)u + [u,v]_𝔥.

    Raises:
        ActionError: if φ fails check_action.
    """
    report = check_action(phi, tol)
    if not report.passed:
        raise ActionError(f"semidirect product needs an action by derivations (residual {report.residual:.3e})")
    n, m = g.dim, h.dim
    C = np.zeros((n + m, n + m, n + m))
    C[:n, :n, :n] = g.structure
    C[n:, n:, n:] = h.structure
    for i in range(n):
        # [e_i, u_a] = φ(e_i) u_a
        C[i, n:, n:] = phi.mats[i].T
        C[n:, i, n:] = -phi.mats[i].T
    labels = tuple(g.labels) + tuple(h.labels)
    return LieAlgebra.from_tensor(C, labels, name=f"{g.name or 'g'}⋉{h.name or 'h'}")


def direct_sum(g: LieAlgebra, h: LieAlgebra) -> LieAlgebra:
    return semidirect_algebra(g, h, ActionPhi.zero(g, h))


def is_homomorphism(f: LinearMap, tol: float = 1e-10) -> CheckReport:
    Cd = f.domain.structure
    Cc = f.codomain.structure
    residual = 0.0
    for i, j in combinations(range(f.domain.dim), 2):
        lhs = f.m @ Cd[i, j]
        rhs = np.einsum("a,b,abk->k", f.m[:, i], f.m[:, j], Cc)
        residual = max(residual, float(np.linalg.norm(lhs - rhs)))
    return residual_report("homomorphism", residual, tol)


def orthonormal_span(vectors, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Orthonormal basis (as columns) of the span of the given columns."""
    V = np.asarray(vectors, dtype=float)
    if V.ndim == 1:
        V = V[:, None]
    if V.size == 0 or V.shape[1] == 0:
        return np.zeros((V.shape[0], 0))
    independent = column_space(V, tol)
    if independent.shape[1] == 0:
        return np.zeros((V.shape[0], 0))
    Q, _ = np.linalg.qr(independent)
    return Q


def _projection_residual(Q: np.ndarray, w: np.ndarray) -> float:
    if Q.shape[1] == 0:
        return float(np.linalg.norm(w))
    return float(np.linalg.norm(w - Q @ (Q.T @ w)))


def is_subalgebra(vectors, ambient: LieAlgebra, tol: float = 1e-10) -> CheckReport:
    """The span of the given columns is closed under the bracket of ``ambient``."""
    V = np.asarray(vectors, dtype=float).reshape(ambient.dim, -1)
    Q = orthonormal_span(V)
    residual = 0.0
    for a, b in combinations(range(V.shape[1]), 2):
        residual = max(residual, _projection_residual(Q, bracket(ambient, V[:, a], V[:, b])))
    return residual_report("subalgebra", residual, tol, dim=int(Q.shape[1]))


def is_ideal(ideal_vectors, sub_vectors, ambient: LieAlgebra, tol: float = 1e-10) -> CheckReport:
    """[k, s] ⊆ k for all k in the first span and s in the second."""
    K = np.asarray(ideal_vectors, dtype=float).reshape(ambient.dim, -1)
    S = np.asarray(sub_vectors, dtype=float).reshape(ambient.dim, -1)
    Q = orthonormal_span(K)
    residual = 0.0
    for a in range(K.shape[1]):
        for b in range(S.shape[1]):
            residual = max(residual, _projection_residual(Q, bracket(ambient, K[:, a], S[:, b])))
    return residual_report("ideal", residual, tol)
