"""
Van Est map from group cochains on (H, ⋆) to cochains of the descendent
Lie algebra with coefficients in θ:

    VE(F)(u₁, …, u_p) = Σ_s sign(s) ∂^p/∂t_{s(1)}…∂t_{s(p)} F(Exp_⋆(t_{s(1)}u_{s(1)}), …)

evaluated at t = 0 by tensor-product difference stencils.
"""

from __future__ import annotations

from itertools import permutations
from typing import Callable, Optional, Sequence

import numpy as np

from ..config import DEFAULT_SEED
from ..group.cochain import GroupCochain, group_cochain_differential
from ..group.core import Element, GroupRBO
from ..group.descendent import check_group_rbo_hom
from ..kernel import MAX_MIXED_DEGREE, UnsupportedDegreeError, mixed_partials
from ..lie.algebra import LinearMap
from ..log import get_logger
from ..rbo.cohomology import Cochain, cochain_tuples, differential_matrix
from ..rbo.operator import check_rbo_hom
from ..report import CheckReport, combine, residual_report
from .differentiate import descendent_exp, diff_group_rbo, group_map_tangent

logger = get_logger(__name__)

SQUARE_MAX_DEGREE = 2
SQUARE_TOL = 1e-3


def _sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def van_est_evaluate(o: GroupRBO, F: GroupCochain, vectors: Sequence[np.ndarray], B: Optional[np.ndarray] = None) -> np.ndarray:
    """VE(F)(v₁, …, v_p) for arbitrary vectors of 𝔥."""
    p = F.arity
    if p > MAX_MIXED_DEGREE:
        raise UnsupportedDegreeError(f"Van Est map of degree {F.k} needs {p} mixed derivatives; at most {MAX_MIXED_DEGREE} supported")
    if len(vectors) != p:
        raise ValueError(f"degree-{F.k} cochain takes {p} arguments")
    if p == 0:
        return F()
    if B is None:
        B = diff_group_rbo(o).B
    vectors = [np.asarray(v, dtype=float) for v in vectors]
    total = None
    for perm in permutations(range(p)):

        def curve(ts, perm=perm):
            return F(*[descendent_exp(o, ts[j] * vectors[j], B) for j in perm])

        value = _sign(perm) * mixed_partials(curve, p)
        total = value if total is None else total + value
    return total


def van_est(o: GroupRBO, F: GroupCochain, B: Optional[np.ndarray] = None) -> Cochain:
    """VE(F) in the canonical cochain basis of C^k(Diff(𝓑))."""
    if B is None:
        B = diff_group_rbo(o).B
    basis = np.eye(o.H.dim)
    coords = [van_est_evaluate(o, F, [basis[i] for i in T], B) for T in cochain_tuples(o.H.dim, F.k)]
    flat = np.concatenate(coords) if coords else np.zeros(0)
    return Cochain(F.k, o.H.dim, o.G.dim, flat)


def van_est_square_check(
    o: GroupRBO,
    F: GroupCochain,
    tol: float = SQUARE_TOL,
    theta: Optional[Callable[[Element], np.ndarray]] = None,
) -> CheckReport:
    """VE(d^𝓑 F) = d_CE(VE F) on every basis tuple of degree k + 1."""
    if F.k > SQUARE_MAX_DEGREE:
        raise UnsupportedDegreeError(f"the commuting square is checked up to degree {SQUARE_MAX_DEGREE}")
    algebra_op = diff_group_rbo(o)
    lhs = van_est(o, group_cochain_differential(o, F, theta=theta), algebra_op.B).coords
    rhs = differential_matrix(algebra_op, F.k) @ van_est(o, F, algebra_op.B).coords
    gap = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
    logger.info("Van Est square for degree %d: residual %.3e", F.k, gap)
    return residual_report("van_est_square", gap, tol, degree=F.k, operator=o.name)


def alternating_check(o: GroupRBO, F: GroupCochain, tol: float = 1e-8, samples: int = 3, seed: int = DEFAULT_SEED) -> CheckReport:
    """VE(F)(u, v) + VE(F)(v, u) = 0 on random pairs."""
    if F.arity != 2:
        raise ValueError("alternation is checked for degree-3 cochains")
    rng = np.random.default_rng(seed)
    B = diff_group_rbo(o).B
    residual = 0.0
    for _ in range(samples):
        u, v = rng.standard_normal((2, o.H.dim))
        total = van_est_evaluate(o, F, [u, v], B) + van_est_evaluate(o, F, [v, u], B)
        residual = max(residual, float(np.linalg.norm(total)))
    return residual_report("alternating", residual, tol)


def check_morphism_integration(
    psi_g: LinearMap,
    psi_h: LinearMap,
    Psi_G: Callable[[Element], Element],
    Psi_H: Callable[[Element], Element],
    src: GroupRBO,
    dst: GroupRBO,
    samples: int = 30,
    tol: float = 1e-9,
    seed: int = DEFAULT_SEED,
    fd_tol: float = 1e-6,
) -> CheckReport:
    """
    (Ψ_G, Ψ_H) integrates (ψ_𝔤, ψ_𝔥): the group maps differentiate to the
    algebra maps, the algebra pair is a homomorphism of the differentiated
    operators, and the group pair is a homomorphism of the group operators.
    """
    tangent_g = group_map_tangent(Psi_G, src.G, dst.G)
    tangent_h = group_map_tangent(Psi_H, src.H, dst.H)
    tangents = max(
        float(np.max(np.abs(tangent_g.m - psi_g.m))),
        float(np.max(np.abs(tangent_h.m - psi_h.m))),
    )
    radius = min(0.3, src.radius / 3.0)
    return combine(
        "morphism_integration",
        [
            residual_report("tangents", tangents, fd_tol),
            check_rbo_hom(psi_g, psi_h, diff_group_rbo(src), diff_group_rbo(dst), fd_tol),
            check_group_rbo_hom(Psi_G, Psi_H, src, dst, samples, tol, radius, seed),
        ],
    )
