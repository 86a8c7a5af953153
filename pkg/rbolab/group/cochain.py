"""Smooth cochains on the descendent group (H, ⋆) with values in 𝔤, twisted by Θ."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from ..kernel import DEFAULT_FD_STEP, DimensionError
from .core import Element, GroupRBO
from .descendent import star, theta_linearized

CochainFn = Callable[[Sequence[Element]], np.ndarray]


@dataclass(frozen=True, eq=False)
class GroupCochain:
    """Degree-k cochain: a map of k−1 elements of H to 𝔤 coordinates."""

    k: int
    f: CochainFn
    name: str = ""

    def __post_init__(self) -> None:
        if self.k < 1:
            raise DimensionError("group cochain degree must be at least 1")

    @property
    def arity(self) -> int:
        return self.k - 1

    def __call__(self, *hs: Element) -> np.ndarray:
        if len(hs) != self.arity:
            raise DimensionError(f"degree-{self.k} cochain takes {self.arity} arguments, got {len(hs)}")
        return np.asarray(self.f(tuple(hs)), dtype=float)

    @classmethod
    def constant(cls, value, name: str = "") -> "GroupCochain":
        value = np.asarray(value, dtype=float)
        return cls(1, lambda hs: value, name or "constant")


def group_cochain_differential(o: GroupRBO, F: GroupCochain, step: float = DEFAULT_FD_STEP, theta=None) -> GroupCochain:
    """
    (dF)(h₁, …, h_{n+1}) = Θ(h₁)F(h₂, …) + Σᵢ (−1)ⁱ F(…, hᵢ⋆hᵢ₊₁, …) + (−1)^{n+1} F(h₁, …, h_n)

    where n = F.arity and Θ(h₁) acts on 𝔤 through its linearization.
    ``theta`` overrides the linearization with a closed form h ↦ matrix.
    """
    n = F.arity
    linear = theta or (lambda h: theta_linearized(o, h, step))

    def f(hs: Sequence[Element]) -> np.ndarray:
        value = linear(hs[0]) @ F(*hs[1:])
        for i in range(1, n + 1):
            merged = list(hs[: i - 1]) + [star(o, hs[i - 1], hs[i])] + list(hs[i + 1 :])
            value = value + (-1) ** i * F(*merged)
        return value + (-1) ** (n + 1) * F(*hs[:n])

    return GroupCochain(F.k + 1, f, f"d({F.name})" if F.name else "dF")


def d_squared(o: GroupRBO, F: GroupCochain, hs: Sequence[Element], theta: Optional[Callable] = None) -> float:
    """‖d(dF)‖ at one tuple of k+1 arguments."""
    dd = group_cochain_differential(o, group_cochain_differential(o, F, theta=theta), theta=theta)
    return float(np.linalg.norm(dd(*hs)))
