"""
Matched pairs from Rota-Baxter operators with the adjoint action.

In 𝔤 ⊕ 𝔤 the diagonal 𝔤_diag = {(x, x)} and 𝔤_B = {(Bx, x + Bx)} are
complementary subalgebras, and the cross bracket

    [(x, x), (Bξ, ξ + Bξ)] = ρ(x)ξ − μ(ξ)x

defines the mutual actions. At the group level G_𝓑 = {(𝓑(g), g·𝓑(g))} and
G_diag factorize G × G, and the actions ▷, ◁ are read off the factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..config import DEFAULT_SEED
from ..group.core import Element, GroupRBO, SampleSweep, frobenius, sample_elements, sample_tuples
from ..group.descendent import dag, star
from ..kernel import DEFAULT_TOLERANCE, Tolerance, rank_and_kernel
from ..lie.algebra import LieAlgebra, Representation, bracket, check_representation, direct_sum, is_subalgebra
from ..log import get_logger
from ..rbo.operator import NotAdjointError, RelRBO, descendent_algebra, require_rbo
from ..report import CheckReport, combine, residual_report

logger = get_logger(__name__)

Pair = Tuple[Element, Element]


@dataclass(frozen=True, eq=False)
class MatchedPairAlg:
    """ρ: 𝔤 → gl(𝔥) and μ: 𝔥 → gl(𝔤)."""

    g: LieAlgebra
    h: LieAlgebra
    rho: Representation
    mu: Representation


def _compatibility_residual(act: np.ndarray, C: np.ndarray, back: np.ndarray) -> float:
    """
    max over i, a, b of
    act(e_i)[e_a, e_b] − [act(e_i)e_a, e_b] − [e_a, act(e_i)e_b] − act(back(e_b)e_i)e_a + act(back(e_a)e_i)e_b.
    """
    residual = 0.0
    for i in range(act.shape[0]):
        D = act[i]
        lhs = np.einsum("kl,abl->abk", D, C)
        first = np.einsum("ca,cbk->abk", D, C)
        second = np.einsum("cb,ack->abk", D, C)
        # act(back(e_b) e_i) e_a, indexed [a, b, k]
        cross = np.einsum("bj,jka->abk", back[:, :, i], act)
        rhs = first + second + cross - np.transpose(cross, (1, 0, 2))
        if lhs.size:
            residual = max(residual, float(np.max(np.abs(lhs - rhs))))
    return residual


def matched_pair_algebra_check(mp: MatchedPairAlg, tol: float = 1e-10) -> CheckReport:
    rho_rep = check_representation(mp.rho, tol)
    rho_rep.name = "rho_representation"
    mu_rep = check_representation(mp.mu, tol)
    mu_rep.name = "mu_representation"
    return combine(
        "matched_pair_algebra",
        [
            rho_rep,
            mu_rep,
            residual_report("rho_compatibility", _compatibility_residual(mp.rho.mats, mp.h.structure, mp.mu.mats), tol),
            residual_report("mu_compatibility", _compatibility_residual(mp.mu.mats, mp.g.structure, mp.rho.mats), tol),
        ],
    )


@dataclass(frozen=True, eq=False)
class RBOMatchedPair:
    """𝔤_B and 𝔤_diag as column bases of 𝔤 ⊕ 𝔤, with the induced matched pair (𝔤_diag acting on 𝔤_B)."""

    ambient: LieAlgebra
    graph_basis: np.ndarray
    diagonal_basis: np.ndarray
    pair: MatchedPairAlg
    report: CheckReport


def matched_pair_from_rbo(o: RelRBO, tol: float = 1e-10, rank_tol: Tolerance = DEFAULT_TOLERANCE) -> RBOMatchedPair:
    """
    Raises:
        NotAdjointError: unless h = g with the adjoint action.
        RotaBaxterError: if ``o`` fails the Rota-Baxter identity.
    """
    if not o.is_adjoint:
        raise NotAdjointError("matched pairs need h = g with the adjoint action")
    require_rbo(o)
    g = o.g
    n = g.dim
    identity = np.eye(n)
    ambient = direct_sum(g, g)
    V_B = np.vstack([o.B, identity + o.B])
    V_diag = np.vstack([identity, identity])
    W = np.hstack([V_B, V_diag])
    rank, _ = rank_and_kernel(W, rank_tol)

    # ρ(e_i) acts on the coordinates of 𝔤_B, μ(e_a) on those of 𝔤_diag
    rho = np.zeros((n, n, n))
    mu = np.zeros((n, n, n))
    if rank == 2 * n:
        for i in range(n):
            for a in range(n):
                c = np.linalg.solve(W, bracket(ambient, V_diag[:, i], V_B[:, a]))
                rho[i][:, a] = c[:n]
                mu[a][:, i] = -c[n:]

    hB = descendent_algebra(o)
    pair = MatchedPairAlg(g, hB, Representation(g, n, rho), Representation(hB, n, mu))
    graph = is_subalgebra(V_B, ambient, tol)
    graph.name = "graph_subalgebra"
    diagonal = is_subalgebra(V_diag, ambient, tol)
    diagonal.name = "diagonal_subalgebra"
    reports = [
        graph,
        diagonal,
        residual_report("direct_sum_rank", float(2 * n - rank), 0.0, rank=rank),
    ]
    if rank == 2 * n:
        reports.append(matched_pair_algebra_check(pair, tol))
    return RBOMatchedPair(ambient, V_B, V_diag, pair, combine("matched_pair_from_rbo", reports, operator=o.name))


class GroupMatchedPair:
    """G_𝓑 and G_diag inside G × G, with ▷ and ◁ from the unique factorization."""

    def __init__(self, o: GroupRBO) -> None:
        if not o.is_adjoint:
            raise NotAdjointError("matched pairs need H = G with the adjoint action")
        self.o = o
        self.G = o.G

    def graph(self, h) -> Pair:
        b = self.o(h)
        return b, h @ b

    @staticmethod
    def diagonal(g) -> Pair:
        return g, g

    @staticmethod
    def multiply(p: Pair, q: Pair) -> Pair:
        return p[0] @ q[0], p[1] @ q[1]

    def inverse(self, p: Pair) -> Pair:
        return self.G.inverse(p[0]), self.G.inverse(p[1])

    def factorize(self, p: Pair) -> Tuple[Pair, Pair]:
        """(a, b) = (𝓑(c), c·𝓑(c))·(𝓑(c)⁻¹a, 𝓑(c)⁻¹a) with c = b·a⁻¹."""
        a, b = p
        c = b @ self.G.inverse(a)
        d = self.G.inverse(self.o(c)) @ a
        return self.graph(c), self.diagonal(d)

    def left(self, p: Pair, q: Pair) -> Pair:
        """p ▷ q for p in G_diag and q in G_𝓑."""
        return self.factorize(self.multiply(p, q))[0]

    def right(self, p: Pair, q: Pair) -> Pair:
        """p ◁ q for p in G_diag and q in G_𝓑."""
        return self.factorize(self.multiply(p, q))[1]


def _pair_gap(p: Pair, q: Pair) -> float:
    return max(frobenius(p[0], q[0]), frobenius(p[1], q[1]))


def matched_pair_group_check(
    o: GroupRBO,
    samples: int = 100,
    tol: float = 1e-9,
    radius: float = 0.3,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Closure of G_𝓑, unique factorization of G × G and the matched-pair axioms at samples."""
    mp = GroupMatchedPair(o)
    G = o.G
    hs = sample_tuples(o.H, samples, 2, radius, seed)
    gs = sample_tuples(G, samples, 2, radius, seed + 1)
    singles = sample_elements(G, samples, radius, seed + 2)

    def closure(h1, h2):
        return _pair_gap(mp.multiply(mp.graph(h1), mp.graph(h2)), mp.graph(star(o, h1, h2)))

    def inverse(h):
        return _pair_gap(mp.inverse(mp.graph(h)), mp.graph(dag(o, h)))

    def factorization(a, b):
        q, p = mp.factorize((a, b))
        return _pair_gap(mp.multiply(q, p), (a, b))

    def mpg1(g, h1, h2):
        p = mp.diagonal(g)
        q1, q2 = mp.graph(h1), mp.graph(h2)
        lhs = mp.left(p, mp.multiply(q1, q2))
        rhs = mp.multiply(mp.left(p, q1), mp.left(mp.right(p, q1), q2))
        return _pair_gap(lhs, rhs)

    def mpg2(g1, g2, h):
        p1, p2 = mp.diagonal(g1), mp.diagonal(g2)
        q = mp.graph(h)
        lhs = mp.right(mp.multiply(p1, p2), q)
        rhs = mp.multiply(mp.right(p1, mp.left(p2, q)), mp.right(p2, q))
        return _pair_gap(lhs, rhs)

    checks = {
        "closure": SampleSweep(),
        "inverse": SampleSweep(),
        "factorization": SampleSweep(),
        "mpg1": SampleSweep(),
        "mpg2": SampleSweep(),
    }
    for (h1, h2), (g1, g2), g in zip(hs, gs, singles):
        checks["closure"].run(lambda: closure(h1, h2))
        checks["inverse"].run(lambda: inverse(h1))
        checks["factorization"].run(lambda: factorization(g1, g2))
        checks["mpg1"].run(lambda: mpg1(g, h1, h2))
        checks["mpg2"].run(lambda: mpg2(g1, g2, h1))
    skipped = sum(s.skipped for s in checks.values())
    if skipped:
        logger.warning("matched pair check skipped %d samples outside the operator domain", skipped)
    return combine(
        "matched_pair_group",
        [residual_report(name, s.residual, tol, skipped=s.skipped) for name, s in checks.items()],
        operator=o.name,
    )
