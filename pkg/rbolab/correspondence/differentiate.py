"""
Differentiation of group-level data to the Lie algebra level.

Tangent maps are taken by central differences along exp curves; the
descendent bracket and θ are recovered from mixed second derivatives.
"""

from __future__ import annotations

import threading
import weakref
from typing import Optional, Tuple

import numpy as np

from ..group.core import DomainEscapeError, Element, GroupAction, GroupRBO, MatrixGroup
from ..group.descendent import dag, star, theta_group_action
from ..group.semidirect import SemidirectGroup
from ..kernel import DEFAULT_FD_STEP, directional_derivative, mixed_partials
from ..lie.algebra import ActionPhi, LinearMap
from ..log import get_logger
from ..rbo.operator import RelRBO, descendent_structure, theta_matrices
from ..report import CheckReport, combine, residual_report

logger = get_logger(__name__)

MAX_STEP_HALVINGS = 20

_diff_cache: "weakref.WeakKeyDictionary[GroupRBO, RelRBO]" = weakref.WeakKeyDictionary()
_diff_lock = threading.Lock()


def diff_action(action: GroupAction, step: float = DEFAULT_FD_STEP) -> ActionPhi:
    """φ(e_i) = d/dt|₀ Φ̃(exp_G(t e_i))."""
    G, H = action.G, action.H
    mats = np.empty((G.dim, H.dim, H.dim))
    for i in range(G.dim):
        e = np.zeros(G.dim)
        e[i] = 1.0
        mats[i] = directional_derivative(lambda t: action.induced(G.exp(t * e)), step)
    return ActionPhi(G.algebra, H.algebra, mats)


def algebra_action(action: GroupAction, step: float = DEFAULT_FD_STEP) -> ActionPhi:
    """The infinitesimal action, exact for adjoint and trivial actions."""
    if action.kind == "adjoint" and action.H is action.G:
        return ActionPhi.adjoint(action.G.algebra)
    if action.kind == "trivial":
        return ActionPhi.zero(action.G.algebra, action.H.algebra)
    return diff_action(action, step)


def tangent_map(F, source: MatrixGroup, target: MatrixGroup, step: float = DEFAULT_FD_STEP) -> np.ndarray:
    """Matrix of v ↦ d/dt|₀ log_target F(exp_source(t v))."""
    columns = []
    for a in range(source.dim):
        e = np.zeros(source.dim)
        e[a] = 1.0
        columns.append(directional_derivative(lambda t: target.log(F(source.exp(t * e))), step))
    return np.column_stack(columns)


def differentiate_with_step(o: GroupRBO, step: float = DEFAULT_FD_STEP) -> Tuple[RelRBO, float]:
    """
    B = tangent map of 𝓑 at e_H, halving the step while the stencil leaves
    the operator's domain. Returns the operator and the step used.
    """
    h = step
    for _ in range(MAX_STEP_HALVINGS):
        try:
            B = tangent_map(o, o.H, o.G, h)
            break
        except DomainEscapeError:
            logger.warning("difference step %.3g leaves the domain of %s; halving", h, o.name or "operator")
            h /= 2.0
    else:
        raise DomainEscapeError(f"no difference step fits the domain radius {o.radius}")
    phi = algebra_action(o.action, h)
    return RelRBO(o.G.algebra, o.H.algebra, phi, B, f"Diff({o.name})" if o.name else "Diff"), h


def diff_group_rbo(o: GroupRBO, step: float = DEFAULT_FD_STEP) -> RelRBO:
    """Relative Rota-Baxter operator on the Lie algebras, cached per group operator."""
    with _diff_lock:
        cached = _diff_cache.get(o)
    if cached is not None and step == DEFAULT_FD_STEP:
        return cached
    result, _ = differentiate_with_step(o, step)
    if step == DEFAULT_FD_STEP:
        with _diff_lock:
            _diff_cache[o] = result
    return result


def descendent_exp(o: GroupRBO, u, B: Optional[np.ndarray] = None) -> Element:
    """Exp_⋆(u) = P_H(EXP(B(u), u)) in G ⋉_Φ H."""
    u = np.asarray(u, dtype=float)
    if B is None:
        B = diff_group_rbo(o).B
    _, h = SemidirectGroup(o.action).EXP(B @ u, u)
    return h


def descendent_bracket(o: GroupRBO, h: Optional[float] = None) -> np.ndarray:
    """Structure tensor of (H, ⋆) from ∂t∂s log(a(t) ⋆ b(s) ⋆ a(t)^†)."""
    H = o.H
    n = H.dim
    C = np.zeros((n, n, n))
    basis = np.eye(n)
    for a in range(n):
        for b in range(a + 1, n):

            def conj(ts, a=a, b=b):
                x = H.exp(ts[0] * basis[a])
                y = H.exp(ts[1] * basis[b])
                return H.log(star(o, star(o, x, y), dag(o, x)))

            C[a, b] = mixed_partials(conj, 2, h)
            C[b, a] = -C[a, b]
    return C


def theta_tangent(o: GroupRBO, h: Optional[float] = None) -> np.ndarray:
    """θ(e_a) matrices from ∂t∂s log_G(Θ(exp_H(t e_a)) exp_G(s e_i))."""
    G, H = o.G, o.H
    mats = np.zeros((H.dim, G.dim, G.dim))
    for a in range(H.dim):
        for i in range(G.dim):

            def curve(ts, a=a, i=i):
                u = np.zeros(H.dim)
                u[a] = ts[0]
                x = np.zeros(G.dim)
                x[i] = ts[1]
                return G.log(theta_group_action(o, H.exp(u), G.exp(x)))

            mats[a][:, i] = mixed_partials(curve, 2, h)
    return mats


def descendent_compat_check(o: GroupRBO, tol: float = 1e-5) -> CheckReport:
    """The Lie algebra of (H, ⋆) is the descendent algebra of Diff(𝓑), and Θ differentiates to θ."""
    B = diff_group_rbo(o)
    bracket_gap = float(np.max(np.abs(descendent_bracket(o) - descendent_structure(B)))) if o.H.dim else 0.0
    theta_gap = float(np.max(np.abs(theta_tangent(o) - theta_matrices(B)))) if o.H.dim else 0.0
    return combine(
        "descendent_compatibility",
        [residual_report("bracket", bracket_gap, tol), residual_report("theta", theta_gap, tol)],
        operator=o.name,
    )


def group_map_tangent(Psi, source: MatrixGroup, target: MatrixGroup, step: float = DEFAULT_FD_STEP) -> LinearMap:
    """Tangent of a group homomorphism as a linear map of the Lie algebras."""
    return LinearMap(source.algebra, target.algebra, tangent_map(Psi, source, target, step))
