"""
Local integration of a relative Rota-Baxter operator on Lie algebras.

The integrated operator is defined on a log-ball U ⊆ H by

    𝓑(P_H(EXP(B(u), u))) = exp_G(B(u)),

so evaluating it at h means solving P_H(EXP(B(u), u)) = h for u. The solve
is a Newton iteration in log_H coordinates started from log_H(h).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from ..config import DEFAULT_SEED
from ..group.core import Element, GroupAction, GroupRBO, MatrixGroup, SampleSweep, frobenius, sample_elements
from ..group.descendent import check_group_rbo
from ..group.semidirect import SemidirectGroup
from ..kernel import DivergenceError, SingularityError, mat_exp, newton_solve
from ..lie.algebra import structure_residual
from ..log import get_logger
from ..rbo.operator import RelRBO, require_rbo
from ..report import CheckReport, combine, residual_report
from .differentiate import diff_action, diff_group_rbo

logger = get_logger(__name__)

DEFAULT_RADIUS = 0.3
GATE_TOL = 1e-6
INTEGRATION_NEWTON_TOL = 1e-12


class IntegrationGateError(RuntimeError):
    """Raised when the group data does not integrate the operator's Lie algebras or action."""


class IntegrationRadiusError(RuntimeError):
    """Raised when the defining equation cannot be solved at a point of the requested domain."""


class LogCoordinateSolver:
    """
    h ↦ u with P_H(EXP(B(u), u)) = h, memoized.

    Reads of the memo run concurrently; insertions are serialized. The solve
    is deterministic, so racing writers store identical values.
    """

    def __init__(self, source: RelRBO, action: GroupAction, radius: float, tol: float = INTEGRATION_NEWTON_TOL) -> None:
        self.source = source
        self.semi = SemidirectGroup(action)
        self.radius = radius
        self.tol = tol
        self._memo: Dict[bytes, np.ndarray] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._memo)

    def forward(self, u: np.ndarray) -> np.ndarray:
        _, h = self.semi.EXP(self.source.B @ u, u)
        return self.semi.H.log(h)

    def solve(self, h: Element) -> np.ndarray:
        key = np.ascontiguousarray(h, dtype=float).tobytes()
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        target = self.semi.H.log(h)
        try:
            u = newton_solve(self.forward, target, target, tol=self.tol)
        except (DivergenceError, SingularityError) as exc:
            raise IntegrationRadiusError(
                f"integration radius exceeded at log-norm {np.linalg.norm(target):.3g}: {exc}; "
                f"retry with a radius below {self.radius}"
            ) from exc
        with self._lock:
            self._memo.setdefault(key, u)
        return u

    def __call__(self, h: Element) -> Element:
        return self.semi.G.exp(self.source.B @ self.solve(h))


@dataclass(frozen=True, eq=False)
class LocalRBO(GroupRBO):
    """Group operator on a finite log-ball, obtained by integrating ``source``."""

    source: Optional[RelRBO] = None
    solver: Optional[LogCoordinateSolver] = field(default=None, repr=False)

    def summary(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "provenance": self.provenance,
            "radius": self.radius,
            "g_dim": self.G.dim,
            "h_dim": self.H.dim,
            "solved_points": len(self.solver) if self.solver is not None else 0,
        }


def integrating_action(o: RelRBO, G: MatrixGroup, H: MatrixGroup) -> GroupAction:
    """
    Ad when φ = ad and H is G, the trivial action when φ = 0, and
    g ↦ exp(φ(log g)) on a vector group H otherwise.
    """
    if o.is_adjoint and H is G:
        return GroupAction.adjoint(G)
    if not np.any(o.phi.mats):
        return GroupAction.trivial(G, H)
    if H.vector:
        return GroupAction.linear(G, H, lambda g: mat_exp(o.phi(G.log(g))), "exp-phi")
    raise IntegrationGateError(f"no group action integrating φ of {o.name or 'operator'} on {H.name}")


def _gate(o: RelRBO, G: MatrixGroup, H: MatrixGroup, action: GroupAction, tol: float) -> None:
    require_rbo(o)
    if o.g.dim != G.dim or o.h.dim != H.dim:
        raise IntegrationGateError(
            f"operator is {o.g.dim}x{o.h.dim} but the groups have dimensions {G.dim} and {H.dim}"
        )
    for label, algebra, group in (("g", o.g, G), ("h", o.h, H)):
        gap = structure_residual(algebra, group.algebra)
        if gap > tol:
            raise IntegrationGateError(f"Lie algebra of {group.name} differs from {label} (structure gap {gap:.3e})")
    phi = diff_action(action)
    gap = float(np.max(np.abs(phi.mats - o.phi.mats))) if o.phi.mats.size else 0.0
    if gap > tol:
        raise IntegrationGateError(f"group action does not differentiate to φ (gap {gap:.3e})")


def integrate_rbo(
    o: RelRBO,
    G: MatrixGroup,
    H: MatrixGroup,
    action: GroupAction,
    radius: float = DEFAULT_RADIUS,
    gate_tol: float = GATE_TOL,
) -> LocalRBO:
    """
    Local operator on the log-ball of the given radius integrating ``o``.

    Raises:
        RotaBaxterError: if ``o`` fails the Rota-Baxter identity.
        IntegrationGateError: if the groups or the action do not integrate ``o``.
    """
    if not radius > 0 or math.isinf(radius):
        raise ValueError("integration radius must be positive and finite")
    _gate(o, G, H, action, gate_tol)
    solver = LogCoordinateSolver(o, action, radius)
    logger.info("integrating %s on a log-ball of radius %g", o.name or "operator", radius)
    return LocalRBO(
        G=G,
        H=H,
        action=action,
        B_map=solver,
        radius=radius,
        name=f"Int({o.name})" if o.name else "Int",
        provenance=f"integrated-from:{o.name or 'operator'}",
        source=o,
        solver=solver,
    )


def check_local_rbo(
    o: GroupRBO,
    samples: int = 100,
    tol: float = 1e-9,
    radius: Optional[float] = None,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Local identity on sampled pairs whose composed argument stays in the domain; others are skipped."""
    if radius is None:
        radius = o.radius / 3.0 if math.isfinite(o.radius) else DEFAULT_RADIUS
    report = check_group_rbo(o, samples, tol, radius, seed)
    report.name = "local_rbo"
    return report


def roundtrip_check(o: LocalRBO, tol: float = 1e-6) -> CheckReport:
    """Diff(Int(B)) = B."""
    if o.source is None:
        raise ValueError("roundtrip needs an integrated operator")
    B = diff_group_rbo(o).B
    gap = float(np.max(np.abs(B - o.source.B))) if B.size else 0.0
    return residual_report("roundtrip", gap, tol, operator=o.name)


def agreement_check(
    a: GroupRBO,
    b: GroupRBO,
    samples: int = 50,
    tol: float = 1e-8,
    radius: float = DEFAULT_RADIUS,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Two operators agree on sampled points of the smaller of their domains."""
    r = min(radius, a.radius, b.radius)
    sweep = SampleSweep()
    for h in sample_elements(a.H, samples, r, seed):
        sweep.run(lambda: frobenius(a(h), b(h)))
    return combine(
        "agreement",
        [residual_report("pointwise", sweep.residual, tol, skipped=sweep.skipped)],
        first=a.name,
        second=b.name,
    )
