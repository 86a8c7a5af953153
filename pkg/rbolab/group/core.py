"""
Matrix Lie groups, actions between them and Rota-Baxter operators on groups.

Elements are invertible ambient matrices. A group is described by a basis of
its Lie algebra inside gl(N); exp and log go through the numeric kernel and
algebra coordinates are read off by least squares against that basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..config import DEFAULT_SEED
from ..kernel import DimensionError, DomainError, SingularityError, as_square, mat_exp, mat_log
from ..lie.algebra import LieAlgebra
from ..lie.catalog import algebra_from_matrices
from ..log import get_logger

logger = get_logger(__name__)

Element = np.ndarray


class DomainEscapeError(RuntimeError):
    """Raised when an argument leaves the log-ball on which a local map is defined."""


@dataclass(frozen=True, eq=False)
class MatrixGroup:
    """
    Connected matrix group given by its Lie algebra basis in gl(N).

    ``vector`` marks groups of unipotent translations [[I, v], [0, 1]]
    (a vector space under addition), for which several maps have closed forms.
    """

    name: str
    basis: Tuple[np.ndarray, ...]
    labels: Optional[Tuple[str, ...]] = None
    vector: bool = False

    def __post_init__(self) -> None:
        mats = tuple(np.asarray(b, dtype=float) for b in self.basis)
        if not mats:
            raise DimensionError(f"group {self.name} needs a nonempty algebra basis")
        n = mats[0].shape[0]
        for b in mats:
            if b.shape != (n, n):
                raise DimensionError(f"basis matrices of {self.name} must all be {n}x{n}")
        object.__setattr__(self, "basis", mats)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def ambient_dim(self) -> int:
        return self.basis[0].shape[0]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def algebra(self) -> LieAlgebra:
        """Structure constants of the basis under the commutator; raises CatalogError if not closed."""
        return algebra_from_matrices(self.basis, self.labels, name=self.name)

    @cached_property
    def _flat(self) -> np.ndarray:
        return np.column_stack([b.ravel() for b in self.basis])

    @cached_property
    def _pinv(self) -> np.ndarray:
        if np.linalg.matrix_rank(self._flat) < self.dim:
            raise DimensionError(f"algebra basis of {self.name} is linearly dependent")
        return np.linalg.pinv(self._flat)

    def validate(self) -> None:
        """Independence and commutator closure of the basis."""
        _ = self._pinv
        _ = self.algebra

    def identity(self) -> Element:
        return np.eye(self.ambient_dim)

    def hat(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.dim,):
            raise DimensionError(f"{self.name} algebra coordinates must have length {self.dim}")
        return np.tensordot(coords, np.stack(self.basis), axes=1)

    def vee(self, X) -> np.ndarray:
        return self._pinv @ np.asarray(X, dtype=float).ravel()

    def exp(self, coords) -> Element:
        if self.vector:
            return self.identity() + self.hat(coords)
        return mat_exp(self.hat(coords))

    def log(self, g) -> np.ndarray:
        g = as_square(g, f"{self.name} element")
        if self.vector:
            return self.vee(g - self.identity())
        return self.vee(mat_log(g))

    def inverse(self, g) -> Element:
        try:
            return np.linalg.inv(g)
        except np.linalg.LinAlgError as exc:
            raise SingularityError(f"{self.name} element is singular") from exc

    def Ad(self, g) -> np.ndarray:
        """Adjoint matrix on algebra coordinates: column i is the coordinates of g b_i g⁻¹."""
        g_inv = self.inverse(g)
        return np.column_stack([self.vee(g @ b @ g_inv) for b in self.basis])

    def log_norm(self, g) -> float:
        """‖log g‖ in algebra coordinates; infinite outside the principal-log domain."""
        try:
            return float(np.linalg.norm(self.log(g)))
        except (DomainError, SingularityError):
            return math.inf

    def in_domain(self, g, radius: float) -> bool:
        if math.isinf(radius):
            return True
        return self.log_norm(g) <= radius * (1.0 + 1e-12)

    def __repr__(self) -> str:
        return f"<MatrixGroup {self.name} dim={self.dim} N={self.ambient_dim}>"


ACTION_KINDS = ("adjoint", "trivial", "linear", "generic")


@dataclass(frozen=True, eq=False)
class GroupAction:
    """
    Φ: G → Aut(H) as ``act(g, h)``, together with the induced Φ̃(g) on the
    coordinates of 𝔥 as ``induced(g)``.
    """

    G: MatrixGroup
    H: MatrixGroup
    act: Callable[[Element, Element], Element]
    induced: Callable[[Element], np.ndarray]
    kind: str = "generic"
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ACTION_KINDS:
            raise ValueError(f"unknown action kind {self.kind!r}")

    def __call__(self, g, h) -> Element:
        return self.act(g, h)

    @classmethod
    def adjoint(cls, G: MatrixGroup) -> "GroupAction":
        return cls(G, G, lambda g, h: g @ h @ np.linalg.inv(g), G.Ad, "adjoint", "Ad")

    @classmethod
    def trivial(cls, G: MatrixGroup, H: MatrixGroup) -> "GroupAction":
        return cls(G, H, lambda g, h: np.array(h, dtype=float), lambda g: np.eye(H.dim), "trivial", "trivial")

    @classmethod
    def linear(cls, G: MatrixGroup, H: MatrixGroup, rep: Callable[[Element], np.ndarray], name: str = "") -> "GroupAction":
        """G acting on a vector group H through a matrix representation on its coordinates."""
        if not H.vector:
            raise DimensionError("linear actions need a vector group")

        def act(g, h):
            return H.exp(rep(g) @ H.log(h))

        return cls(G, H, act, rep, "linear", name or "linear")


@dataclass(frozen=True, eq=False)
class GroupRBO:
    """
    𝓑: U ⊆ H → G with U the log-ball of radius ``radius`` (infinite for
    global operators).
    """

    G: MatrixGroup
    H: MatrixGroup
    action: GroupAction
    B_map: Callable[[Element], Element]
    radius: float = math.inf
    name: str = ""
    provenance: str = "analytic"

    def in_domain(self, h) -> bool:
        return self.H.in_domain(h, self.radius)

    def __call__(self, h) -> Element:
        if not self.in_domain(h):
            raise DomainEscapeError(
                f"argument with log-norm {self.H.log_norm(h):.3g} outside the domain radius {self.radius} of {self.name or 'operator'}"
            )
        return np.asarray(self.B_map(h), dtype=float)

    @property
    def is_adjoint(self) -> bool:
        return self.G is self.H and self.action.kind == "adjoint"


def sample_coords(dim: int, count: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    """Points of the radius-ball in ℝ^dim: uniform direction, radius ρ·U^{1/dim}."""
    directions = rng.standard_normal((count, dim))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    scales = radius * rng.random((count, 1)) ** (1.0 / dim)
    return directions / norms * scales


def sample_elements(group: MatrixGroup, count: int, radius: float = 0.3, seed: int = DEFAULT_SEED) -> List[Element]:
    rng = np.random.default_rng(seed)
    return [group.exp(c) for c in sample_coords(group.dim, count, radius, rng)]


def sample_tuples(
    group: MatrixGroup,
    count: int,
    arity: int,
    radius: float = 0.3,
    seed: int = DEFAULT_SEED,
) -> List[Tuple[Element, ...]]:
    """``count`` tuples of ``arity`` independent samples from one seeded stream."""
    rng = np.random.default_rng(seed)
    coords = sample_coords(group.dim, count * arity, radius, rng)
    elements = [group.exp(c) for c in coords]
    return [tuple(elements[n * arity : (n + 1) * arity]) for n in range(count)]


def frobenius(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


@dataclass
class SampleSweep:
    """Max-residual accumulator that counts samples skipped for leaving a domain."""

    residual: float = 0.0
    evaluated: int = 0
    skipped: int = 0
    errors: List[str] = field(default_factory=list)

    def run(self, fn: Callable[[], float]) -> None:
        try:
            value = float(fn())
        except DomainEscapeError as exc:
            self.skipped += 1
            if len(self.errors) < 3:
                self.errors.append(str(exc))
            return
        self.evaluated += 1
        self.residual = max(self.residual, value)
