"""
Group-level identities of a Rota-Baxter operator 𝓑: H → G.

The checks sample points of a log-ball in H; any sample whose intermediate
arguments leave the operator's domain is skipped and counted in the report.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..config import DEFAULT_SEED
from ..kernel import DEFAULT_FD_STEP, directional_derivative
from ..log import get_logger
from ..report import CheckReport, combine, residual_report
from .core import Element, GroupAction, GroupRBO, SampleSweep, frobenius, sample_elements, sample_tuples
from .semidirect import SemidirectGroup

logger = get_logger(__name__)


def star(o: GroupRBO, h1, h2) -> Element:
    """h₁ ⋆ h₂ = h₁·Φ(𝓑(h₁))h₂."""
    return h1 @ o.action.act(o(h1), h2)


def dag(o: GroupRBO, h) -> Element:
    """⋆-inverse h^† = Φ(𝓑(h)⁻¹)h⁻¹."""
    return o.action.act(o.G.inverse(o(h)), o.H.inverse(h))


def theta_group_action(o: GroupRBO, h, g) -> Element:
    """Θ(h)g = 𝓑(Φ(g)h^†)⁻¹·g·𝓑(h^†)."""
    h_dag = dag(o, h)
    return o.G.inverse(o(o.action.act(g, h_dag))) @ g @ o(h_dag)


def theta_linearized(o: GroupRBO, h, step: float = DEFAULT_FD_STEP) -> np.ndarray:
    """Tangent map of g ↦ Θ(h)g at e_G in the coordinates of 𝔤."""
    G = o.G
    columns = []
    for i in range(G.dim):
        e = np.zeros(G.dim)
        e[i] = 1.0
        columns.append(directional_derivative(lambda t: G.log(theta_group_action(o, h, G.exp(t * e))), step))
    return np.column_stack(columns)


def _sweep(name: str, fn: Callable[..., float], samples, tol: float) -> CheckReport:
    sweep = SampleSweep()
    for args in samples:
        sweep.run(lambda: fn(*args))
    if sweep.skipped:
        logger.warning("%s: skipped %d samples outside the operator domain", name, sweep.skipped)
    return residual_report(name, sweep.residual, tol, skipped=sweep.skipped, evaluated=sweep.evaluated)


def check_group_rbo(
    o: GroupRBO,
    samples: int = 100,
    tol: float = 1e-9,
    radius: float = 0.3,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """𝓑(h₁)𝓑(h₂) = 𝓑(h₁·Φ(𝓑(h₁))h₂) at sampled pairs, plus 𝓑(e) = e."""
    H = o.H
    unit = frobenius(o(H.identity()), o.G.identity())

    def identity_defect(h1, h2):
        return frobenius(o(h1) @ o(h2), o(star(o, h1, h2)))

    pairs = sample_tuples(H, samples, 2, radius, seed)
    return combine(
        "group_rbo",
        [
            residual_report("unit", unit, tol),
            _sweep("identity", identity_defect, pairs, tol),
        ],
        operator=o.name,
    )


def graph_subgroup_check(
    o: GroupRBO,
    samples: int = 100,
    tol: float = 1e-9,
    radius: float = 0.3,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Gr(𝓑) = {(𝓑(h), h)} is closed under the product and inverse of G ⋉_Φ H."""
    semi = SemidirectGroup(o.action)

    def graph(h):
        return o(h), h

    def product_defect(h1, h2):
        g, h = semi.multiply(graph(h1), graph(h2))
        return frobenius(g, o(h))

    def inverse_defect(h):
        g, h_inv = semi.inverse(graph(h))
        return frobenius(g, o(h_inv))

    pairs = sample_tuples(o.H, samples, 2, radius, seed)
    singles = [(h,) for h in sample_elements(o.H, samples, radius, seed)]
    return combine(
        "graph_subgroup",
        [_sweep("product", product_defect, pairs, tol), _sweep("inverse", inverse_defect, singles, tol)],
    )


def check_descendent_group(
    o: GroupRBO,
    samples: int = 100,
    tol: float = 1e-9,
    radius: float = 0.3,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """(H, ⋆) is a group with inverse †, and 𝓑 is a homomorphism from it to G."""
    H, G = o.H, o.G
    e = H.identity()

    def unit(h):
        return max(frobenius(star(o, h, e), h), frobenius(star(o, e, h), h))

    def inverse(h):
        h_dag = dag(o, h)
        return max(frobenius(star(o, h, h_dag), e), frobenius(star(o, h_dag, h), e))

    def associativity(h1, h2, h3):
        return frobenius(star(o, star(o, h1, h2), h3), star(o, h1, star(o, h2, h3)))

    def dag_image(h):
        return frobenius(o(dag(o, h)), G.inverse(o(h)))

    singles = [(h,) for h in sample_elements(H, samples, radius, seed)]
    triples = sample_tuples(H, samples, 3, radius, seed)
    return combine(
        "descendent_group",
        [
            _sweep("unit", unit, singles, tol),
            _sweep("inverse", inverse, singles, tol),
            _sweep("associativity", associativity, triples, tol),
            _sweep("dag_image", dag_image, singles, tol),
            check_group_rbo(o, samples, tol, radius, seed),
        ],
    )


def check_theta_action(
    o: GroupRBO,
    samples: int = 50,
    tol: float = 1e-9,
    radius: float = 0.3,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Θ(e) = id, Θ(h₁⋆h₂) = Θ(h₁)Θ(h₂), Θ(h)e = e and each Θ(h) multiplicative."""
    G, H = o.G, o.H
    hs = sample_elements(H, samples, radius, seed)
    gs = sample_elements(G, samples, radius, seed + 1)
    h_pairs = sample_tuples(H, samples, 2, radius, seed)
    g_pairs = sample_tuples(G, samples, 2, radius, seed + 1)

    def unit(g):
        return frobenius(theta_group_action(o, H.identity(), g), g)

    def composition(h1, h2, g):
        lhs = theta_group_action(o, star(o, h1, h2), g)
        rhs = theta_group_action(o, h1, theta_group_action(o, h2, g))
        return frobenius(lhs, rhs)

    def fixes_identity(h):
        return frobenius(theta_group_action(o, h, G.identity()), G.identity())

    def automorphism(h, g1, g2):
        lhs = theta_group_action(o, h, g1 @ g2)
        return frobenius(lhs, theta_group_action(o, h, g1) @ theta_group_action(o, h, g2))

    return combine(
        "theta_action",
        [
            _sweep("unit", unit, [(g,) for g in gs], tol),
            _sweep("composition", composition, [(a, b, g) for (a, b), g in zip(h_pairs, gs)], tol),
            _sweep("fixes_identity", fixes_identity, [(h,) for h in hs], tol),
            _sweep("automorphism", automorphism, [(h, a, b) for h, (a, b) in zip(hs, g_pairs)], tol),
        ],
    )


def check_group_action(
    action: GroupAction,
    samples: int = 50,
    tol: float = 1e-9,
    radius: float = 0.3,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Φ(e) = id, Φ(g₁g₂) = Φ(g₁)Φ(g₂), each Φ(g) an automorphism, Φ̃ multiplicative."""
    G, H = action.G, action.H
    g_pairs = sample_tuples(G, samples, 2, radius, seed)
    h_pairs = sample_tuples(H, samples, 2, radius, seed + 1)

    def unit(h1, h2):
        return frobenius(action.act(G.identity(), h1), h1)

    def composition(g1, g2, h):
        return frobenius(action.act(g1 @ g2, h), action.act(g1, action.act(g2, h)))

    def automorphism(g, h1, h2):
        return frobenius(action.act(g, h1 @ h2), action.act(g, h1) @ action.act(g, h2))

    def induced(g1, g2):
        return frobenius(action.induced(g1 @ g2), action.induced(g1) @ action.induced(g2))

    return combine(
        "group_action",
        [
            _sweep("unit", unit, h_pairs, tol),
            _sweep("composition", composition, [(a, b, h1) for (a, b), (h1, _) in zip(g_pairs, h_pairs)], tol),
            _sweep("automorphism", automorphism, [(a, h1, h2) for (a, _), (h1, h2) in zip(g_pairs, h_pairs)], tol),
            _sweep("induced", induced, g_pairs, tol),
        ],
        action=action.name,
    )


def check_group_rbo_hom(
    Psi_G: Callable[[Element], Element],
    Psi_H: Callable[[Element], Element],
    src: GroupRBO,
    dst: GroupRBO,
    samples: int = 50,
    tol: float = 1e-9,
    radius: float = 0.3,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """
    (Ψ_G, Ψ_H) is a homomorphism from ``src`` (𝓑′) to ``dst`` (𝓑):
    𝓑∘Ψ_H = Ψ_G∘𝓑′ and Ψ_H(Φ′(g)h) = Φ(Ψ_G g)Ψ_H h, then the consequence
    Ψ_G(Θ′(h)g) = Θ(Ψ_H h)Ψ_G g.
    """
    hs = sample_elements(src.H, samples, radius, seed)
    gs = sample_elements(src.G, samples, radius, seed + 1)

    def operator(h):
        return frobenius(dst(Psi_H(h)), Psi_G(src(h)))

    def action(g, h):
        return frobenius(Psi_H(src.action.act(g, h)), dst.action.act(Psi_G(g), Psi_H(h)))

    def theta(g, h):
        return frobenius(Psi_G(theta_group_action(src, h, g)), theta_group_action(dst, Psi_H(h), Psi_G(g)))

    pairs = list(zip(gs, hs))
    return combine(
        "group_rbo_homomorphism",
        [
            _sweep("operator_intertwining", operator, [(h,) for h in hs], tol),
            _sweep("action_intertwining", action, pairs, tol),
            _sweep("theta_intertwining", theta, pairs, tol),
        ],
    )

