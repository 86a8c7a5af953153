"""
Cochain complex of a relative Rota-Baxter operator.

C^k(B) = Hom(∧^{k−1}𝔥, 𝔤) with the Chevalley-Eilenberg differential of the
descendent algebra (𝔥, [·,·]_B) with coefficients in the representation θ.
Cochains are stored on sorted index tuples in lexicographic order with the
𝔤 coordinate varying fastest.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..kernel import DEFAULT_TOLERANCE, DimensionError, SingularityError, Tolerance, rank_and_kernel
from ..lie.algebra import LinearMap
from ..log import get_logger
from ..report import CheckReport, combine, residual_report
from .operator import RelRBO, check_rbo_hom, descendent_structure, require_rbo, theta_matrices

logger = get_logger(__name__)


def cochain_tuples(h_dim: int, k: int) -> List[Tuple[int, ...]]:
    """Sorted (k−1)-tuples indexing C^k, lexicographic."""
    if k < 1:
        raise DimensionError("cochain degree must be at least 1")
    return list(combinations(range(h_dim), k - 1))


def cochain_dim(h_dim: int, g_dim: int, k: int) -> int:
    if k < 1:
        return 0
    return comb(h_dim, k - 1) * g_dim


@dataclass(frozen=True, eq=False)
class Cochain:
    """Element of C^k(B), coordinates indexed by (sorted tuple, 𝔤 coordinate)."""

    k: int
    h_dim: int
    g_dim: int
    coords: np.ndarray

    def __post_init__(self) -> None:
        coords = np.asarray(self.coords, dtype=float).ravel()
        expected = cochain_dim(self.h_dim, self.g_dim, self.k)
        if coords.size != expected:
            raise DimensionError(f"degree-{self.k} cochain needs {expected} coordinates, got {coords.size}")
        object.__setattr__(self, "coords", coords)

    def value(self, indices: Sequence[int]) -> np.ndarray:
        """ω(e_{i₁}, …) for basis indices in any order (alternating)."""
        if len(set(indices)) < len(indices):
            return np.zeros(self.g_dim)
        order = sorted(range(len(indices)), key=lambda p: indices[p])
        sign = _permutation_sign(order)
        position = cochain_tuples(self.h_dim, self.k).index(tuple(sorted(indices)))
        block = self.coords[position * self.g_dim : (position + 1) * self.g_dim]
        return sign * block

    def evaluate(self, vectors: Sequence[np.ndarray]) -> np.ndarray:
        """ω(v₁, …, v_p) = Σ_T det(V[T, :]) ω(e_T)."""
        p = self.k - 1
        if len(vectors) != p:
            raise DimensionError(f"degree-{self.k} cochain takes {p} arguments")
        if p == 0:
            return self.coords.copy()
        V = np.column_stack([np.asarray(v, dtype=float) for v in vectors])
        total = np.zeros(self.g_dim)
        for position, T in enumerate(cochain_tuples(self.h_dim, self.k)):
            weight = np.linalg.det(V[list(T), :])
            if weight:
                total += weight * self.coords[position * self.g_dim : (position + 1) * self.g_dim]
        return total


def _permutation_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def differential_matrix(
    o: RelRBO,
    k: int,
    theta: Optional[np.ndarray] = None,
    structure: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Matrix of d: C^k(B) → C^{k+1}(B),

        dω(u₁..u_k) = Σ_i (−1)^{i+1} θ(u_i) ω(..û_i..)
                      + Σ_{i<j} (−1)^{i+j} ω([u_i, u_j]_B, ..û_i..û_j..).

    Degrees past dim 𝔥 + 1 give the zero map into the zero space.
    """
    if theta is None or structure is None:
        require_rbo(o)
        theta = theta_matrices(o) if theta is None else theta
        structure = descendent_structure(o) if structure is None else structure
    g_dim, h_dim = o.g.dim, o.h.dim
    inputs = cochain_tuples(h_dim, k)
    outputs = cochain_tuples(h_dim, k + 1)
    D = np.zeros((len(outputs) * g_dim, len(inputs) * g_dim))
    if not inputs or not outputs:
        return D
    position = {T: n for n, T in enumerate(inputs)}
    identity = np.eye(g_dim)

    for row, S in enumerate(outputs):
        rows = slice(row * g_dim, (row + 1) * g_dim)
        for i, s in enumerate(S):
            rest = S[:i] + S[i + 1 :]
            col = position[rest]
            D[rows, col * g_dim : (col + 1) * g_dim] += (-1) ** i * theta[s]
        for i, j in combinations(range(len(S)), 2):
            rest = tuple(s for n, s in enumerate(S) if n not in (i, j))
            sign_ij = (-1) ** (i + j)
            for m in np.nonzero(structure[S[i], S[j]])[0]:
                m = int(m)
                if m in rest:
                    continue
                T = tuple(sorted(rest + (m,)))
                sign = (-1) ** sum(1 for r in rest if r < m)
                col = position[T]
                D[rows, col * g_dim : (col + 1) * g_dim] += sign_ij * sign * structure[S[i], S[j], m] * identity
    return D


class DifferentialCache:
    """Differential matrices of one operator, assembled once per degree."""

    def __init__(self, o: RelRBO) -> None:
        require_rbo(o)
        self.o = o
        self.theta = theta_matrices(o)
        self.structure = descendent_structure(o)
        self._mats: Dict[int, np.ndarray] = {}

    def __getitem__(self, k: int) -> np.ndarray:
        if k not in self._mats:
            if k < 1:
                self._mats[k] = np.zeros((cochain_dim(self.o.h.dim, self.o.g.dim, 1), 0))
            else:
                self._mats[k] = differential_matrix(self.o, k, self.theta, self.structure)
        return self._mats[k]


def _rank(D: np.ndarray, tol: Tolerance) -> int:
    if D.size == 0:
        return 0
    rank, _ = rank_and_kernel(D, tol)
    return rank


def cohomology_dim(o: RelRBO, k: int, tol: Tolerance = DEFAULT_TOLERANCE, cache: Optional[DifferentialCache] = None) -> int:
    """dim ker D_k − rank D_{k−1}."""
    if k < 1:
        raise DimensionError("cohomology degree must be at least 1")
    cache = cache or DifferentialCache(o)
    kernel = cochain_dim(o.h.dim, o.g.dim, k) - _rank(cache[k], tol)
    image = _rank(cache[k - 1], tol) if k > 1 else 0
    return kernel - image


def cohomology_table(o: RelRBO, kmax: int, tol: Tolerance = DEFAULT_TOLERANCE) -> Dict[str, object]:
    """Per-degree {k, dim C^k, rank D_k, dim ker D_k, dim H^k} and the max entry of D_{k+1}·D_k."""
    cache = DifferentialCache(o)
    ranks = {0: 0}
    for k in range(1, kmax + 2):
        ranks[k] = _rank(cache[k], tol)
    rows = []
    for k in range(1, kmax + 1):
        dim_c = cochain_dim(o.h.dim, o.g.dim, k)
        kernel = dim_c - ranks[k]
        rows.append(
            {
                "k": k,
                "dim_C": dim_c,
                "rank_D": ranks[k],
                "dim_ker": kernel,
                "dim_H": kernel - ranks[k - 1],
            }
        )
    dd = 0.0
    for k in range(1, kmax + 1):
        product = cache[k + 1] @ cache[k]
        if product.size:
            dd = max(dd, float(np.max(np.abs(product))))
    logger.info("cohomology of %s up to degree %d, max |dd| = %.3e", o.name or "operator", kmax, dd)
    return {"operator": o.name, "rows": rows, "dd_residual": dd}


def coboundary_of(o: RelRBO, x) -> np.ndarray:
    """d x for x in 𝔤 = C^1, as a g.dim × h.dim matrix (column a is θ(e_a)x)."""
    theta = theta_matrices(o)
    return np.stack([theta[a] @ np.asarray(x, dtype=float) for a in range(o.h.dim)], axis=1)


def coboundary_matrix(o: RelRBO) -> np.ndarray:
    """D₁: 𝔤 = C¹ → C², the coboundaries of elements of 𝔤."""
    return differential_matrix(o, 1)


def pushforward_matrix(psi_g: LinearMap, psi_h: LinearMap, k: int) -> np.ndarray:
    """
    Matrix of p(ω)(u₁, …) = ψ_𝔤 ω(ψ_𝔥⁻¹u₁, …) on C^k.

    Raises:
        SingularityError: if ψ_𝔥 is not invertible.
    """
    M = _inverse(psi_h.m)
    h_dim = psi_h.m.shape[0]
    g_dim = psi_g.m.shape[0]
    tuples = cochain_tuples(h_dim, k)
    P = np.zeros((len(tuples) * g_dim, len(tuples) * g_dim))
    for row, S in enumerate(tuples):
        for col, T in enumerate(tuples):
            weight = np.linalg.det(M[np.ix_(T, S)]) if S else 1.0
            if weight:
                P[row * g_dim : (row + 1) * g_dim, col * g_dim : (col + 1) * g_dim] = weight * psi_g.m
    return P


def _inverse(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1] or (m.size and np.linalg.cond(m) > 1e12):
        raise SingularityError("ψ_𝔥 must be invertible to push cochains forward")
    return np.linalg.inv(m) if m.size else m.copy()


def pushforward_cochain(psi_g: LinearMap, psi_h: LinearMap, omega: Cochain) -> Cochain:
    P = pushforward_matrix(psi_g, psi_h, omega.k)
    return Cochain(omega.k, omega.h_dim, psi_g.m.shape[0], P @ omega.coords)


def check_cochain_map(
    src: RelRBO,
    dst: RelRBO,
    psi_g: LinearMap,
    psi_h: LinearMap,
    kmax: int = 3,
    tol: float = 1e-10,
) -> CheckReport:
    """d^B ∘ p = p ∘ d^{B′} on C^k for k ≤ kmax, after checking (ψ_𝔤, ψ_𝔥) is a homomorphism from src to dst."""
    hom = check_rbo_hom(psi_g, psi_h, src, dst, tol)
    if not hom.passed:
        return combine("cochain_map", [hom])
    d_src = DifferentialCache(src)
    d_dst = DifferentialCache(dst)
    residual = 0.0
    for k in range(1, kmax + 1):
        lhs = d_dst[k] @ pushforward_matrix(psi_g, psi_h, k)
        rhs = pushforward_matrix(psi_g, psi_h, k + 1) @ d_src[k]
        if lhs.size:
            residual = max(residual, float(np.max(np.abs(lhs - rhs))))
    return combine("cochain_map", [hom, residual_report("commutes", residual, tol, kmax=kmax)])
