"""
Factorization of Lie groups from Rota-Baxter operators with the adjoint action.

For B on 𝔤 the images g₊ = Im(B + Id) and g₋ = Im(B) are subalgebras, and
x = (B + Id)x − Bx splits every element. At the group level

    g₋(t) = 𝓑(exp 2tX₀),    g₊(t) = exp 2tX₀ · 𝓑(exp 2tX₀),

so exp 2tX₀ = g₊(t)·g₋(t)⁻¹, which drives the AKS flow L(t) = Ad*_{g₊(t)⁻¹}L₀.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..config import DEFAULT_SEED
from ..correspondence.differentiate import diff_group_rbo
from ..group.core import DomainEscapeError, Element, GroupRBO, SampleSweep, frobenius, sample_tuples
from ..group.descendent import check_descendent_group, dag, star
from ..kernel import DEFAULT_TOLERANCE, Tolerance, column_space, lstsq_residual, null_space, rank_and_kernel
from ..lie.algebra import LieAlgebra, is_ideal, is_subalgebra
from ..log import get_logger
from ..rbo.operator import NotAdjointError, RelRBO, check_rbo_homomorphisms, require_rbo
from ..report import CheckReport, combine, residual_report

logger = get_logger(__name__)

AKS_TIMES = (0.0, 0.05, 0.1, 0.15, 0.2)
DIFFERENTIATED_RANK_TOL = Tolerance(abs=1e-7, rel=1e-6)


def _require_adjoint(o) -> None:
    if not o.is_adjoint:
        raise NotAdjointError(f"{o.name or 'operator'} must act on its own algebra by the adjoint action")


def _span_residual(basis: np.ndarray, w: np.ndarray) -> float:
    _, residual = lstsq_residual(basis, w)
    return residual


@dataclass(frozen=True, eq=False)
class InfinitesimalSplit:
    """Subalgebras g₊ = Im(B+Id), g₋ = Im(B) and ideals k₊ = ker B, k₋ = ker(B+Id), as column bases."""

    operator: RelRBO
    g_plus: np.ndarray
    g_minus: np.ndarray
    k_plus: np.ndarray
    k_minus: np.ndarray
    report: CheckReport

    def dims(self) -> Dict[str, int]:
        return {
            "g_plus": self.g_plus.shape[1],
            "g_minus": self.g_minus.shape[1],
            "k_plus": self.k_plus.shape[1],
            "k_minus": self.k_minus.shape[1],
        }


def split(o: RelRBO, tol: float = 1e-9, rank_tol: Tolerance = DEFAULT_TOLERANCE) -> InfinitesimalSplit:
    """
    Images and kernels of B and B + Id with their subalgebra and ideal checks.

    Raises:
        NotAdjointError: unless h = g with the adjoint action.
        RotaBaxterError: if ``o`` fails the Rota-Baxter identity.
    """
    _require_adjoint(o)
    require_rbo(o)
    g = o.g
    n = g.dim
    B = o.B
    plus = B + np.eye(n)
    g_plus = column_space(plus, rank_tol)
    g_minus = column_space(B, rank_tol)
    k_plus = null_space(B, rank_tol)
    k_minus = null_space(plus, rank_tol)

    reports: List[CheckReport] = []
    for label, basis in (("g_plus", g_plus), ("g_minus", g_minus), ("k_plus", k_plus), ("k_minus", k_minus)):
        report = is_subalgebra(basis, g, tol)
        report.name = f"{label}_subalgebra"
        reports.append(report)
    for label, ideal, sub in (("k_plus", k_plus, g_plus), ("k_minus", k_minus, g_minus)):
        report = is_ideal(ideal, sub, g, tol)
        report.name = f"{label}_ideal"
        reports.append(report)

    containment = max(
        [_span_residual(g_plus, k_plus[:, a]) for a in range(k_plus.shape[1])]
        + [_span_residual(g_minus, k_minus[:, a]) for a in range(k_minus.shape[1])],
        default=0.0,
    )
    reports.append(residual_report("kernels_in_images", containment, tol))

    decomposition = 0.0
    for x in np.eye(n):
        x_plus, x_minus = plus @ x, B @ x
        decomposition = max(
            decomposition,
            _span_residual(g_plus, x_plus),
            _span_residual(g_minus, x_minus),
            float(np.linalg.norm(x_plus - x_minus - x)),
        )
    reports.append(residual_report("decomposition", decomposition, tol))

    nullity = abs(g_plus.shape[1] + k_minus.shape[1] - n) + abs(g_minus.shape[1] + k_plus.shape[1] - n)
    reports.append(residual_report("rank_nullity", float(nullity), 0.0))
    reports.append(check_rbo_homomorphisms(o, tol))

    s = InfinitesimalSplit(o, g_plus, g_minus, k_plus, k_minus, combine("split", reports, operator=o.name))
    logger.debug("split of %s: %s", o.name or "operator", s.dims())
    return s


def _complement(kernel: np.ndarray, image: np.ndarray, rank_tol: Tolerance) -> np.ndarray:
    """Columns of ``image`` completing the independent ``kernel`` columns to a basis of the image."""
    if image.shape[1] == 0:
        return image
    stacked = column_space(np.hstack([kernel, image]), rank_tol)
    return stacked[:, kernel.shape[1] :]


@dataclass(frozen=True, eq=False)
class CayleyTransform:
    """
    g₊/k₊ → g₋/k₋, [(B+Id)u] ↦ [Bu], in the bases given by the complement
    columns; ``matrix`` has shape dim(g₋/k₋) × dim(g₊/k₊).
    """

    plus_complement: np.ndarray
    minus_complement: np.ndarray
    matrix: np.ndarray
    report: CheckReport

    @property
    def is_empty(self) -> bool:
        return self.matrix.size == 0


def cayley_transform(
    s: InfinitesimalSplit,
    tol: float = 1e-9,
    rank_tol: Tolerance = DEFAULT_TOLERANCE,
) -> CayleyTransform:
    """Cayley transform of a verified split, with well-definedness and invertibility checks."""
    o = s.operator
    B = o.B
    plus = B + np.eye(o.g.dim)
    C_plus = _complement(s.k_plus, s.g_plus, rank_tol)
    C_minus = _complement(s.k_minus, s.g_minus, rank_tol)
    target = np.hstack([s.k_minus, C_minus])
    n_k = s.k_minus.shape[1]

    columns = []
    solve = 0.0
    for c in C_plus.T:
        u, *_ = np.linalg.lstsq(plus, c, rcond=None)
        solve = max(solve, float(np.linalg.norm(plus @ u - c)))
        coords, residual = lstsq_residual(target, B @ u)
        solve = max(solve, residual)
        columns.append(coords[n_k:])
    matrix = np.column_stack(columns) if columns else np.zeros((C_minus.shape[1], 0))

    # representatives of the zero class of g₊/k₊ are (B+Id)w with w in ker B(B+Id)
    ambiguity = null_space(B @ plus, rank_tol)
    well_defined = max((_span_residual(s.k_minus, B @ w) for w in ambiguity.T), default=0.0)

    deficiency = abs(matrix.shape[0] - matrix.shape[1])
    if matrix.size:
        rank, _ = rank_and_kernel(matrix, rank_tol)
        deficiency += min(matrix.shape) - rank
    report = combine(
        "cayley",
        [
            residual_report("solve", solve, tol),
            residual_report("well_defined", well_defined, tol),
            residual_report("invertible", float(deficiency), 0.0),
            s.report,
        ],
        quotient_dims=[C_plus.shape[1], C_minus.shape[1]],
    )
    return CayleyTransform(C_plus, C_minus, matrix, report)


@dataclass(frozen=True)
class Factorization:
    """exp(2tX₀) = g₊·g₋⁻¹."""

    t: float
    X0: np.ndarray
    g: Element
    g_plus: Element
    g_minus: Element
    residual: float

    def to_dict(self) -> Dict[str, object]:
        return {
            "t": self.t,
            "X0": self.X0.tolist(),
            "exp": self.g.tolist(),
            "g_plus": self.g_plus.tolist(),
            "g_minus": self.g_minus.tolist(),
            "residual": self.residual,
        }


def factorize(o: GroupRBO, X0, t: float) -> Factorization:
    """
    Raises:
        NotAdjointError: unless H = G with the adjoint action.
        DomainEscapeError: if exp(2tX₀) is outside the domain of ``o``.
    """
    _require_adjoint(o)
    X0 = np.asarray(X0, dtype=float)
    G = o.G
    g = G.exp(2.0 * t * X0)
    g_minus = o(g)
    g_plus = g @ g_minus
    residual = frobenius(g, g_plus @ G.inverse(g_minus))
    return Factorization(float(t), X0, g, g_plus, g_minus, residual)


def stationary_covector(g: LieAlgebra, X0, rank_tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """A unit L₀ with ad_{X₀}ᵀL₀ = 0."""
    ad_X0 = np.tensordot(np.asarray(X0, dtype=float), g.ad, axes=1)
    kernel = null_space(ad_X0.T, rank_tol)
    assert kernel.shape[1] > 0, "empty kernel for ad_X0ᵀ"
    L0 = kernel[:, 0]
    return L0 / np.linalg.norm(L0)


@dataclass
class AKSTrajectory:
    """Rows {t, L coordinates, agreement}; ``truncated_at`` is the first grid time that left the domain."""

    labels: Sequence[str]
    L0: np.ndarray
    rows: List[Dict[str, float]] = field(default_factory=list)
    norms: List[float] = field(default_factory=list)
    truncated_at: Optional[float] = None

    @property
    def columns(self) -> List[str]:
        return ["t"] + [f"L_{label}" for label in self.labels] + ["agreement"]

    def report(self, tol: float = 1e-8, casimir: bool = False) -> CheckReport:
        agreement = max((row["agreement"] for row in self.rows), default=0.0)
        reports = [residual_report("agreement", agreement, tol, points=len(self.rows))]
        if casimir:
            reference = float(np.linalg.norm(self.L0))
            drift = max((abs(n - reference) for n in self.norms), default=0.0)
            reports.append(residual_report("casimir", drift, tol))
        report = combine("aks", reports, truncated_at=self.truncated_at)
        if self.truncated_at is not None:
            report.passed = False
        return report


def aks_flow(o: GroupRBO, X0, L0=None, ts: Sequence[float] = AKS_TIMES) -> AKSTrajectory:
    """
    L(t) = Ad_{g₊(t)}ᵀL₀ along the factorization of exp(2tX₀), compared with
    Ad_{g₋(t)}ᵀL₀. ``L0`` defaults to the stationary covector of X₀.
    """
    _require_adjoint(o)
    G = o.G
    if L0 is None:
        L0 = stationary_covector(G.algebra, X0)
    L0 = np.asarray(L0, dtype=float)
    labels = G.labels or tuple(str(i) for i in range(G.dim))
    trajectory = AKSTrajectory(labels, L0)
    for t in ts:
        try:
            f = factorize(o, X0, t)
        except DomainEscapeError as exc:
            logger.warning("AKS flow truncated at t = %g: %s", t, exc)
            trajectory.truncated_at = float(t)
            break
        L_plus = G.Ad(f.g_plus).T @ L0
        L_minus = G.Ad(f.g_minus).T @ L0
        row = {"t": float(t)}
        row.update({f"L_{label}": float(v) for label, v in zip(labels, L_plus)})
        row["agreement"] = float(np.max(np.abs(L_plus - L_minus)))
        trajectory.rows.append(row)
        trajectory.norms.append(float(np.linalg.norm(L_plus)))
    return trajectory


class LocalDescendentGroup:
    """
    (H, ⋆) restricted to V = U ∩ U^†, with g₁ ⋆ g₂ = g₁·𝓑(g₁)·g₂·𝓑(g₁)⁻¹
    and g^† = 𝓑(g)⁻¹·g⁻¹·𝓑(g).
    """

    def __init__(self, o: GroupRBO) -> None:
        _require_adjoint(o)
        self.o = o

    def contains(self, g) -> bool:
        if not self.o.in_domain(g):
            return False
        return self.o.in_domain(dag(self.o, g))

    def _require(self, g) -> None:
        if not self.contains(g):
            raise DomainEscapeError(f"element outside U ∩ U^† of {self.o.name or 'operator'}")

    def star(self, g1, g2) -> Element:
        self._require(g1)
        self._require(g2)
        b = self.o(g1)
        return g1 @ b @ g2 @ self.o.G.inverse(b)

    def dag(self, g) -> Element:
        self._require(g)
        b = self.o(g)
        return self.o.G.inverse(b) @ self.o.G.inverse(g) @ b

    def check(self, samples: int = 50, tol: float = 1e-9, radius: Optional[float] = None, seed: int = DEFAULT_SEED) -> CheckReport:
        """Group axioms at in-domain samples, plus the closed forms against the generic ⋆ and †."""
        if radius is None:
            radius = self.o.radius / 3.0 if math.isfinite(self.o.radius) else 0.3
        sweep = SampleSweep()
        for g1, g2 in sample_tuples(self.o.H, samples, 2, radius, seed):
            sweep.run(
                lambda: max(
                    frobenius(self.star(g1, g2), star(self.o, g1, g2)),
                    frobenius(self.dag(g1), dag(self.o, g1)),
                )
            )
        report = check_descendent_group(self.o, samples, tol, radius, seed)
        return combine(
            "local_descendent_group",
            [residual_report("closed_forms", sweep.residual, tol, skipped=sweep.skipped), report],
            operator=self.o.name,
        )


def local_descendent_group(o: GroupRBO) -> LocalDescendentGroup:
    return LocalDescendentGroup(o)


def plus_operator_check(
    o: GroupRBO,
    samples: int = 50,
    tol: float = 1e-9,
    radius: float = 0.3,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """𝓑₊(h) = h·𝓑(h) satisfies 𝓑₊(h₁ ⋆ h₂) = 𝓑₊(h₁)𝓑₊(h₂)."""
    _require_adjoint(o)

    def plus(h):
        return h @ o(h)

    sweep = SampleSweep()
    for h1, h2 in sample_tuples(o.H, samples, 2, radius, seed):
        sweep.run(lambda: frobenius(plus(star(o, h1, h2)), plus(h1) @ plus(h2)))
    return residual_report("plus_operator", sweep.residual, tol, skipped=sweep.skipped, operator=o.name)


def unit_directions(dim: int, count: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """``count`` seeded unit vectors in ℝ^dim, one per row."""
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((count, dim))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def factorization_check(
    o: GroupRBO,
    directions: np.ndarray,
    ts: Sequence[float],
    tol: float = 1e-9,
) -> CheckReport:
    """The defining residual ‖exp(2tX₀) − g₊g₋⁻¹‖ over a grid of directions and times."""
    sweep = SampleSweep()
    for X0 in directions:
        for t in ts:
            sweep.run(lambda: factorize(o, X0, t).residual)
    return residual_report("factorization", sweep.residual, tol, skipped=sweep.skipped, operator=o.name)


def cayley_group_check(
    o: GroupRBO,
    samples: int = 20,
    tol: float = 1e-8,
    ts: Sequence[float] = (-0.1, 0.1),
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """log g₊ ∈ Im(B + Id) and log g₋ ∈ Im(B) for B = Diff(𝓑), by least squares."""
    B = diff_group_rbo(o).B
    g_plus_basis = column_space(B + np.eye(o.G.dim), DIFFERENTIATED_RANK_TOL)
    g_minus_basis = column_space(B, DIFFERENTIATED_RANK_TOL)
    sweep = SampleSweep()
    for X0 in unit_directions(o.G.dim, samples, seed):
        for t in ts:

            def membership(X0=X0, t=t):
                f = factorize(o, X0, t)
                return max(
                    _span_residual(g_plus_basis, o.G.log(f.g_plus)),
                    _span_residual(g_minus_basis, o.G.log(f.g_minus)),
                )

            sweep.run(membership)
    return residual_report("cayley_group", sweep.residual, tol, skipped=sweep.skipped, operator=o.name)
