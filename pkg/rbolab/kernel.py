"""
Dense numerical primitives shared by every rbolab module.

Everything here is a pure function of its inputs: matrix exponential and
logarithm, rank and kernel by elimination, finite-difference derivatives, an
RK4 flow for left-invariant fields on matrix groups and a Newton solver with a
finite-difference Jacobian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .log import get_logger

logger = get_logger(__name__)

EXP_SERIES_ORDER = 16
EXP_SCALE_TARGET = 0.5
LOG_ROOT_TARGET = 0.25
LOG_SERIES_ORDER = 16
MAX_SQUARE_ROOTS = 100
SQRT_MAX_STEPS = 100
DEFAULT_FD_STEP = 1e-5
NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50
NEWTON_JACOBIAN_STEP = 1e-7
RK4_MIN_STEPS = 50
RK4_STEP_NORM = 0.02

# Tensor-product stencils for mixed partials; steps grow with the degree
# because round-off scales like eps / h**m.
WIDE_STENCIL = {-2: 1.0 / 12.0, -1: -8.0 / 12.0, 1: 8.0 / 12.0, 2: -1.0 / 12.0}
NARROW_STENCIL = {-1: -0.5, 1: 0.5}
MIXED_PARTIAL_STEPS = {1: 1e-3, 2: 2e-3, 3: 5e-3}
MAX_MIXED_DEGREE = 3


class DimensionError(RuntimeError):
    """Raised when array shapes do not fit the requested operation."""


class SingularityError(RuntimeError):
    """Raised when a matrix that must be inverted is numerically singular."""


class DomainError(RuntimeError):
    """Raised when an input lies outside the domain of a matrix function."""


class DivergenceError(RuntimeError):
    """Raised when an iterative solve fails to converge."""

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(message)
        self.residual = residual


class UnsupportedDegreeError(RuntimeError):
    """Raised when a finite-difference stencil of too high an order is requested."""


@dataclass(frozen=True)
class Tolerance:
    """Absolute plus relative threshold used for rank and membership decisions."""

    abs: float = 1e-12
    rel: float = 1e-9

    def __post_init__(self) -> None:
        if self.abs < 0 or self.rel < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.abs == 0 and self.rel == 0:
            raise ValueError("tolerances must not both be zero")

    def threshold(self, scale: float) -> float:
        return self.abs + self.rel * scale


DEFAULT_TOLERANCE = Tolerance()


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Return M as a finite float 2-d array."""
    A = np.asarray(M, dtype=float)
    if A.ndim != 2:
        raise DimensionError(f"{name} must be two-dimensional, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError(f"{name} has non-finite entries")
    return A


def as_square(M, name: str = "matrix") -> np.ndarray:
    A = as_matrix(M, name)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {A.shape}")
    return A


def mat_exp(M) -> np.ndarray:
    """Matrix exponential by scaling and squaring around a truncated series."""
    A = as_square(M, "mat_exp argument")
    n = A.shape[0]
    norm = float(np.linalg.norm(A, 1)) if n else 0.0
    squarings = 0
    if norm >= EXP_SCALE_TARGET:
        squarings = int(math.ceil(math.log2(norm / EXP_SCALE_TARGET))) + 1
    X = A / (2.0**squarings)

    result = np.eye(n)
    term = np.eye(n)
    for j in range(1, EXP_SERIES_ORDER + 1):
        term = term @ X / j
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def _inverse(A: np.ndarray, what: str) -> np.ndarray:
    try:
        return np.linalg.inv(A)
    except np.linalg.LinAlgError as exc:
        raise SingularityError(f"{what} is singular") from exc


def sqrtm_denman_beavers(M) -> np.ndarray:
    """Principal square root by the Denman-Beavers iteration."""
    Y = as_square(M, "sqrtm argument")
    Z = np.eye(Y.shape[0])
    for step in range(SQRT_MAX_STEPS):
        Y_inv = _inverse(Y, "square-root iterate")
        Z_inv = _inverse(Z, "square-root iterate")
        Y_next = 0.5 * (Y + Z_inv)
        Z = 0.5 * (Z + Y_inv)
        change = float(np.linalg.norm(Y_next - Y, 1))
        Y = Y_next
        if not np.all(np.isfinite(Y)):
            break
        if change <= 4.0 * np.finfo(float).eps * max(1.0, float(np.linalg.norm(Y, 1))):
            logger.debug("Denman-Beavers converged after %d steps", step + 1)
            return Y
    raise DomainError("square-root iteration did not converge; matrix outside the principal-log domain")


def mat_log(M) -> np.ndarray:
    """
    Principal matrix logarithm by inverse scaling and squaring.

    Square roots are taken until ‖X − I‖₁ < 0.25, the Gregory series
    2·Σ Z^j/j (odd j) with Z = (X − I)(X + I)⁻¹ is summed, and the result is
    rescaled by 2^roots.

    Raises:
        SingularityError: if M is numerically singular.
        DomainError: if the square-root iteration does not converge.
    """
    A = as_square(M, "mat_log argument")
    n = A.shape[0]
    identity = np.eye(n)
    if n == 0:
        return A.copy()
    if np.linalg.cond(A, 1) > 1.0 / np.finfo(float).eps:
        raise SingularityError("mat_log argument is singular")

    X = A
    roots = 0
    while float(np.linalg.norm(X - identity, 1)) >= LOG_ROOT_TARGET:
        if roots >= MAX_SQUARE_ROOTS:
            raise DomainError("too many square roots; matrix outside the principal-log domain")
        X = sqrtm_denman_beavers(X)
        roots += 1

    Z = (X - identity) @ _inverse(X + identity, "X + I")
    Z2 = Z @ Z
    term = Z
    series = np.zeros_like(A)
    for j in range(1, LOG_SERIES_ORDER, 2):
        series = series + term / j
        term = term @ Z2
    logger.debug("mat_log used %d square roots", roots)
    return 2.0 * series * (2.0**roots)


def _row_reduce(M: np.ndarray, tol: Tolerance) -> Tuple[np.ndarray, List[int]]:
    A = np.array(M, dtype=float, copy=True)
    rows, cols = A.shape
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    threshold = tol.threshold(scale)
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = r + int(np.argmax(np.abs(A[r:, c])))
        if abs(A[p, c]) <= threshold:
            A[r:, c] = 0.0
            continue
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = A[r] / A[r, c]
        others = np.arange(rows) != r
        A[others] -= np.outer(A[others, c], A[r])
        pivots.append(c)
        r += 1
    return A, pivots


def rank_and_kernel(M, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[int, List[np.ndarray]]:
    """
    Rank and null-space basis by Gaussian elimination with partial pivoting.

    A pivot counts as zero when |pivot| ≤ tol.abs + tol.rel·max|M|.
    """
    A = np.asarray(M, dtype=float)
    if A.ndim != 2:
        raise DimensionError(f"rank_and_kernel expects a 2-d array, got shape {A.shape}")
    cols = A.shape[1]
    reduced, pivots = _row_reduce(A, tol)
    kernel: List[np.ndarray] = []
    pivot_set = set(pivots)
    for free in range(cols):
        if free in pivot_set:
            continue
        v = np.zeros(cols)
        v[free] = 1.0
        for row, pc in enumerate(pivots):
            v[pc] = -reduced[row, free]
        kernel.append(v)
    return len(pivots), kernel


def column_space(M, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Independent columns of M spanning its image (shape rows × rank)."""
    A = np.asarray(M, dtype=float)
    if A.ndim != 2:
        raise DimensionError(f"column_space expects a 2-d array, got shape {A.shape}")
    _, pivots = _row_reduce(A, tol)
    return A[:, pivots]


def null_space(M, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Kernel basis stacked as columns (shape cols × nullity)."""
    A = np.asarray(M, dtype=float)
    _, kernel = rank_and_kernel(A, tol)
    if not kernel:
        return np.zeros((A.shape[1], 0))
    return np.column_stack(kernel)


def lstsq_residual(basis: np.ndarray, target: np.ndarray) -> Tuple[np.ndarray, float]:
    """Least-squares coordinates of target in the column span of basis and the residual norm."""
    target = np.asarray(target, dtype=float)
    if basis.size == 0 or basis.shape[1] == 0:
        return np.zeros(0), float(np.linalg.norm(target))
    coords, *_ = np.linalg.lstsq(basis, target, rcond=None)
    return coords, float(np.linalg.norm(basis @ coords - target))


def directional_derivative(f: Callable[[float], np.ndarray], h: float = DEFAULT_FD_STEP) -> np.ndarray:
    """Fourth-order central difference of a curve at t = 0."""
    return (
        np.asarray(f(-2.0 * h), dtype=float)
        - 8.0 * np.asarray(f(-h), dtype=float)
        + 8.0 * np.asarray(f(h), dtype=float)
        - np.asarray(f(2.0 * h), dtype=float)
    ) / (12.0 * h)


def mixed_partials(
    f: Callable[[Sequence[float]], np.ndarray],
    m: int,
    h: Optional[float] = None,
    wide: bool = True,
) -> np.ndarray:
    """
    ∂^m f / ∂t₁…∂t_m at the origin by a tensor-product central stencil.

    The wide stencil is O(h⁴) accurate, the narrow one O(h²).
    """
    if m > MAX_MIXED_DEGREE:
        raise UnsupportedDegreeError(f"mixed partials of order {m} exceed the stencil limit {MAX_MIXED_DEGREE}")
    if m < 0:
        raise UnsupportedDegreeError("order must be nonnegative")
    if m == 0:
        return np.asarray(f(()), dtype=float)
    step = MIXED_PARTIAL_STEPS[m] if h is None else h
    weights = WIDE_STENCIL if wide else NARROW_STENCIL

    total = None
    for offsets in product(weights.keys(), repeat=m):
        coeff = 1.0
        for k in offsets:
            coeff *= weights[k]
        value = coeff * np.asarray(f(tuple(k * step for k in offsets)), dtype=float)
        total = value if total is None else total + value
    return total / step**m


def rk4_group_flow(
    x: np.ndarray,
    velocity_h: Callable[[np.ndarray], np.ndarray],
    h_size: int,
    norm: float,
    steps: Optional[int] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integrate g' = g·x, h' = h·U(g) from (I, I) over [0, 1] with classical RK4.

    ``velocity_h`` returns the ambient matrix U(g) of the H-velocity at g.
    """
    g_size = x.shape[0]
    if steps is None:
        steps = max(RK4_MIN_STEPS, int(math.ceil(norm / RK4_STEP_NORM)))
    dt = 1.0 / steps
    g = np.eye(g_size)
    h = np.eye(h_size)

    def field(g_: np.ndarray, h_: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return g_ @ x, h_ @ velocity_h(g_)

    for _ in range(steps):
        k1g, k1h = field(g, h)
        k2g, k2h = field(g + 0.5 * dt * k1g, h + 0.5 * dt * k1h)
        k3g, k3h = field(g + 0.5 * dt * k2g, h + 0.5 * dt * k2h)
        k4g, k4h = field(g + dt * k3g, h + dt * k3h)
        g = g + dt / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
        h = h + dt / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h)
    return g, h


def newton_solve(
    F: Callable[[np.ndarray], np.ndarray],
    target: np.ndarray,
    guess: np.ndarray,
    tol: float = NEWTON_TOL,
    max_iter: int = NEWTON_MAX_ITER,
    jacobian_step: float = NEWTON_JACOBIAN_STEP,
) -> np.ndarray:
    """
    Solve F(u) = target by Newton's method with a central-difference Jacobian.

    Iteration stops once the absolute residual ‖F(u) − target‖ is at most tol.

    Raises:
        SingularityError: if the Jacobian cannot be inverted.
        DivergenceError: if the residual is still above tol after max_iter steps.
    """
    target = np.asarray(target, dtype=float)
    u = np.array(guess, dtype=float, copy=True)
    residual = math.inf
    for iteration in range(max_iter + 1):
        r = np.asarray(F(u), dtype=float) - target
        residual = float(np.linalg.norm(r))
        logger.debug("newton iteration %d residual %.3e", iteration, residual)
        if not math.isfinite(residual):
            break
        if residual <= tol:
            return u
        if iteration == max_iter:
            break
        J = np.empty((r.size, u.size))
        for j in range(u.size):
            e = np.zeros_like(u)
            e[j] = jacobian_step
            J[:, j] = (np.asarray(F(u + e)) - np.asarray(F(u - e))) / (2.0 * jacobian_step)
        if J.shape[0] != J.shape[1] or np.linalg.cond(J) > 1e12:
            raise SingularityError("Newton Jacobian is singular")
        u = u - np.linalg.solve(J, r)
    raise DivergenceError(f"Newton iteration did not converge (residual {residual:.3e})", residual)
