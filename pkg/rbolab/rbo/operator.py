"""
Relative Rota-Baxter operators of weight 1 on Lie algebras.

An operator B: 𝔥 → 𝔤 with respect to an action φ: 𝔤 → Der(𝔥) satisfies

    [Bu, Bv]_𝔤 = B(φ(Bu)v − φ(Bv)u + [u, v]_𝔥).

`check_rbo` is the gate for every descendent construction in this package:
constructors raise `RotaBaxterError` instead of producing structures from an
operator that fails it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional

import numpy as np

from ..config import DEFAULT_SEED
from ..kernel import DimensionError
from ..lie.algebra import (
    ActionPhi,
    LieAlgebra,
    LinearMap,
    Representation,
    bracket,
    check_action,
    check_jacobi,
    check_representation,
    is_homomorphism,
    is_subalgebra,
    semidirect_algebra,
    structure_residual,
)
from ..log import get_logger
from ..report import CheckReport, combine, residual_report

logger = get_logger(__name__)

GATE_TOL = 1e-8


class RotaBaxterError(RuntimeError):
    """Raised when an operator fails the Rota-Baxter identity where one is required."""


class NotAdjointError(RuntimeError):
    """Raised when an operation needs h = g with the adjoint action."""


@dataclass(frozen=True, eq=False)
class RelRBO:
    """B: 𝔥 → 𝔤 (matrix g.dim × h.dim) together with its action φ."""

    g: LieAlgebra
    h: LieAlgebra
    phi: ActionPhi
    B: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        B = np.asarray(self.B, dtype=float)
        if B.shape != (self.g.dim, self.h.dim):
            raise DimensionError(f"operator matrix must be {self.g.dim}x{self.h.dim}, got {B.shape}")
        if self.phi.mats.shape != (self.g.dim, self.h.dim, self.h.dim):
            raise DimensionError("action matrices do not match the algebras")
        object.__setattr__(self, "B", B)

    @classmethod
    def adjoint(cls, g: LieAlgebra, B, name: str = "") -> "RelRBO":
        """Operator on g with respect to the adjoint action (h = g)."""
        return cls(g, g, ActionPhi.adjoint(g), B, name)

    def with_matrix(self, B, name: Optional[str] = None) -> "RelRBO":
        return RelRBO(self.g, self.h, self.phi, B, self.name if name is None else name)

    @property
    def is_adjoint(self) -> bool:
        return (
            self.g is self.h
            or (self.g.dim == self.h.dim and structure_residual(self.g, self.h) <= 1e-12)
        ) and bool(np.allclose(self.phi.mats, self.g.ad, atol=1e-12))


def rbo_defect(o: RelRBO, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    Bu = o.B @ u
    Bv = o.B @ v
    inner = o.phi(Bu) @ v - o.phi(Bv) @ u + bracket(o.h, u, v)
    return bracket(o.g, Bu, Bv) - o.B @ inner


def check_rbo(o: RelRBO, tol: float = 1e-9, samples: int = 0, seed: int = DEFAULT_SEED) -> CheckReport:
    """Max residual of the Rota-Baxter identity over basis pairs (plus optional random pairs)."""
    identity = np.eye(o.h.dim)
    residual = 0.0
    for a, b in combinations(range(o.h.dim), 2):
        residual = max(residual, float(np.linalg.norm(rbo_defect(o, identity[a], identity[b]))))
    reports = [check_action(o.phi, tol), residual_report("identity", residual, tol)]
    if samples:
        rng = np.random.default_rng(seed)
        sampled = 0.0
        for _ in range(samples):
            u, v = rng.standard_normal((2, o.h.dim))
            scale = max(1.0, float(np.linalg.norm(u) * np.linalg.norm(v)))
            sampled = max(sampled, float(np.linalg.norm(rbo_defect(o, u, v))) / scale)
        reports.append(residual_report("sampled", sampled, tol, samples=samples))
    return combine("rbo", reports, operator=o.name)


def require_rbo(o: RelRBO, tol: float = GATE_TOL) -> None:
    report = check_rbo(o, tol)
    if not report.passed:
        raise RotaBaxterError(
            f"operator {o.name or '<unnamed>'} fails the Rota-Baxter identity (residual {report.residual:.3e})"
        )


def graph_vectors(o: RelRBO) -> np.ndarray:
    """Columns (B e_a, e_a) spanning Gr(B) inside 𝔤 ⋉ 𝔥."""
    return np.vstack([o.B, np.eye(o.h.dim)])


def graph_subalgebra_check(o: RelRBO, tol: float = 1e-9) -> CheckReport:
    """Gr(B) is a subalgebra of 𝔤 ⋉_φ 𝔥 (equivalent to the Rota-Baxter identity)."""
    ambient = semidirect_algebra(o.g, o.h, o.phi)
    report = is_subalgebra(graph_vectors(o), ambient, tol)
    report.name = "graph_subalgebra"
    return report


def descendent_structure(o: RelRBO) -> np.ndarray:
    """Structure tensor of [u, v]_B = φ(Bu)v − φ(Bv)u + [u, v]_𝔥 (no gate)."""
    P = np.tensordot(o.B.T, o.phi.mats, axes=1)
    # P[a] = φ(B e_a); φ(B e_a) e_b = P[a][:, b]
    C = np.einsum("akb->abk", P) - np.einsum("bka->abk", P) + o.h.structure
    return C


def descendent_algebra(o: RelRBO, tol: float = GATE_TOL) -> LieAlgebra:
    require_rbo(o, tol)
    return LieAlgebra.from_tensor(descendent_structure(o), o.h.labels, name=f"{o.h.name or 'h'}_B")


def descendent_check(o: RelRBO, tol: float = 1e-10) -> CheckReport:
    """The descendent bracket satisfies Jacobi and B is a homomorphism into 𝔤."""
    hB = descendent_algebra(o)
    return combine(
        "descendent",
        [check_jacobi(hB, tol), is_homomorphism(LinearMap(hB, o.g, o.B), tol)],
    )


def check_rbo_homomorphisms(o: RelRBO, tol: float = 1e-10) -> CheckReport:
    """B, and B + Id when h = g with ad, are homomorphisms from the descendent algebra."""
    hB = descendent_algebra(o)
    reports = [is_homomorphism(LinearMap(hB, o.g, o.B), tol)]
    reports[0].name = "B"
    if o.is_adjoint:
        plus = is_homomorphism(LinearMap(hB, o.g, o.B + np.eye(o.g.dim)), tol)
        plus.name = "B+Id"
        reports.append(plus)
    return combine("operator_homomorphisms", reports)


def theta_matrices(o: RelRBO) -> np.ndarray:
    """θ(e_a) as g.dim × g.dim matrices: θ(u)x = B(φ(x)u) + [Bu, x]_𝔤 (no gate)."""
    mats = np.empty((o.h.dim, o.g.dim, o.g.dim))
    for a in range(o.h.dim):
        # column i is B φ(e_i) e_a
        mats[a] = o.B @ o.phi.mats[:, :, a].T + np.tensordot(o.B[:, a], o.g.ad, axes=1)
    return mats


def theta_rep(o: RelRBO, tol: float = GATE_TOL) -> Representation:
    hB = descendent_algebra(o, tol)
    return Representation(hB, o.g.dim, theta_matrices(o))


def theta_rep_check(o: RelRBO, tol: float = 1e-10) -> CheckReport:
    report = check_representation(theta_rep(o), tol)
    report.name = "theta_representation"
    return report


def mixed_identity_check(o: RelRBO, tol: float = 1e-10) -> CheckReport:
    """φ(x)[u,v]_B = [φ(x)u,v]_B + [u,φ(x)v]_B + φ(θ(v)x)u − φ(θ(u)x)v on basis triples."""
    require_rbo(o)
    CB = descendent_structure(o)
    theta = theta_matrices(o)
    residual = 0.0
    for i in range(o.g.dim):
        D = o.phi.mats[i]
        lhs = np.einsum("kl,abl->abk", D, CB)
        first = np.einsum("ca,cbk->abk", D, CB)
        second = np.einsum("cb,ack->abk", D, CB)
        # φ(θ(e_b) e_i) e_a, indexed [a, b, k]
        phi_theta = np.einsum("bj,jka->abk", theta[:, :, i], o.phi.mats)
        rhs = first + second + phi_theta - np.transpose(phi_theta, (1, 0, 2))
        if lhs.size:
            residual = max(residual, float(np.max(np.abs(lhs - rhs))))
    return residual_report("mixed_identity", residual, tol)


@dataclass(frozen=True, eq=False)
class ModifiedR:
    """Solution candidate R of the modified Yang-Baxter equation on g."""

    g: LieAlgebra
    R: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        R = np.asarray(self.R, dtype=float)
        if R.shape != (self.g.dim, self.g.dim):
            raise DimensionError(f"R must be {self.g.dim}x{self.g.dim}, got {R.shape}")
        object.__setattr__(self, "R", R)


def mybe_defect(r: ModifiedR, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    Ru = r.R @ u
    Rv = r.R @ v
    return (
        bracket(r.g, Ru, Rv)
        - r.R @ bracket(r.g, Ru, v)
        - r.R @ bracket(r.g, u, Rv)
        + bracket(r.g, u, v)
    )


def check_mybe(r: ModifiedR, tol: float = 1e-9) -> CheckReport:
    identity = np.eye(r.g.dim)
    residual = 0.0
    for a, b in combinations(range(r.g.dim), 2):
        residual = max(residual, float(np.linalg.norm(mybe_defect(r, identity[a], identity[b]))))
    return residual_report("mybe", residual, tol, operator=r.name)


def to_modified_r(o: RelRBO) -> ModifiedR:
    """R = Id + 2B for an operator on g with the adjoint action."""
    if not o.is_adjoint:
        raise NotAdjointError("the modified r-matrix bridge needs h = g with the adjoint action")
    return ModifiedR(o.g, np.eye(o.g.dim) + 2.0 * o.B, o.name)


def from_modified_r(r: ModifiedR) -> RelRBO:
    """B = (R − Id)/2 with the adjoint action."""
    return RelRBO.adjoint(r.g, (r.R - np.eye(r.g.dim)) / 2.0, r.name)


def check_rbo_hom(
    psi_g: LinearMap,
    psi_h: LinearMap,
    src: RelRBO,
    dst: RelRBO,
    tol: float = 1e-9,
) -> CheckReport:
    """
    (ψ_𝔤, ψ_𝔥) is a homomorphism from ``src`` (B′) to ``dst`` (B).

    Checks ψ_𝔤∘B′ = B∘ψ_𝔥 and ψ_𝔥(φ′(x)v) = φ(ψ_𝔤 x)ψ_𝔥 v, then the consequences:
    ψ_𝔥 preserves descendent brackets and ψ_𝔤∘θ′(u) = θ(ψ_𝔥 u)∘ψ_𝔤.
    """
    reports: List[CheckReport] = []
    for label, f in (("psi_g", psi_g), ("psi_h", psi_h)):
        report = is_homomorphism(f, tol)
        report.name = label
        reports.append(report)

    commute = float(np.max(np.abs(psi_g.m @ src.B - dst.B @ psi_h.m))) if src.B.size else 0.0
    reports.append(residual_report("operator_intertwining", commute, tol))

    action = 0.0
    for i in range(src.g.dim):
        # ψ_𝔥 φ′(e_i) vs φ(ψ_𝔤 e_i) ψ_𝔥
        lhs = psi_h.m @ src.phi.mats[i]
        rhs = dst.phi(psi_g.m[:, i]) @ psi_h.m
        if lhs.size:
            action = max(action, float(np.max(np.abs(lhs - rhs))))
    reports.append(residual_report("action_intertwining", action, tol))

    C_src = descendent_structure(src)
    C_dst = descendent_structure(dst)
    desc = 0.0
    for a, b in combinations(range(src.h.dim), 2):
        lhs = psi_h.m @ C_src[a, b]
        rhs = np.einsum("p,q,pqk->k", psi_h.m[:, a], psi_h.m[:, b], C_dst)
        desc = max(desc, float(np.linalg.norm(lhs - rhs)))
    reports.append(residual_report("descendent_homomorphism", desc, tol))

    theta_src = theta_matrices(src)
    theta_dst = theta_matrices(dst)
    theta = 0.0
    for a in range(src.h.dim):
        lhs = psi_g.m @ theta_src[a]
        rhs = np.tensordot(psi_h.m[:, a], theta_dst, axes=1) @ psi_g.m
        if lhs.size:
            theta = max(theta, float(np.max(np.abs(lhs - rhs))))
    reports.append(residual_report("theta_intertwining", theta, tol))
    return combine("rbo_homomorphism", reports)
