"""Semidirect product groups G ⋉_Φ H and their exponential map."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..kernel import rk4_group_flow
from ..log import get_logger
from .core import Element, GroupAction, MatrixGroup

logger = get_logger(__name__)

QUADRATURE_NODES = 8

Pair = Tuple[Element, Element]


def _unit_interval_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(nodes)
    return 0.5 * (x + 1.0), 0.5 * w


@dataclass(frozen=True, eq=False)
class SemidirectGroup:
    """Pairs (g, h) with (g₁, h₁)(g₂, h₂) = (g₁g₂, h₁·Φ(g₁)h₂)."""

    action: GroupAction

    @property
    def G(self) -> MatrixGroup:
        return self.action.G

    @property
    def H(self) -> MatrixGroup:
        return self.action.H

    def identity(self) -> Pair:
        return self.G.identity(), self.H.identity()

    def multiply(self, a: Pair, b: Pair) -> Pair:
        g1, h1 = a
        g2, h2 = b
        return g1 @ g2, h1 @ self.action.act(g1, h2)

    def inverse(self, a: Pair) -> Pair:
        g, h = a
        g_inv = self.G.inverse(g)
        return g_inv, self.action.act(g_inv, self.H.inverse(h))

    def EXP(self, x, u) -> Pair:
        """
        Exponential of (x, u) ∈ 𝔤 ⋉ 𝔥.

        Closed forms for trivial, adjoint and linear actions on vector groups;
        otherwise the left-invariant flow is integrated with RK4.
        """
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=float)
        G, H = self.G, self.H
        kind = self.action.kind
        if kind == "trivial" or not np.any(x):
            return G.exp(x), H.exp(u)
        if kind == "adjoint" and H is G:
            return G.exp(x), G.exp(x + u) @ G.exp(-x)
        if H.vector:
            nodes, weights = _unit_interval_rule(QUADRATURE_NODES)
            v = sum(w * (self.action.induced(G.exp(s * x)) @ u) for s, w in zip(nodes, weights))
            return G.exp(x), H.exp(v)
        return self._flow(x, u)

    def _flow(self, x: np.ndarray, u: np.ndarray) -> Pair:
        X = self.G.hat(x)
        norm = float(np.linalg.norm(np.concatenate([x, u])))

        def velocity(g: Element) -> np.ndarray:
            return self.H.hat(self.action.induced(g) @ u)

        logger.debug("EXP by RK4 flow, norm %.3g", norm)
        return rk4_group_flow(X, velocity, self.H.ambient_dim, norm)

    def flow(self, x, u) -> Pair:
        """EXP by RK4 regardless of closed forms."""
        return self._flow(np.asarray(x, dtype=float), np.asarray(u, dtype=float))
