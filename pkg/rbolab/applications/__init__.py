"""Factorization, the AKS flow and matched pairs built from Rota-Baxter operators."""

from .factorization import (  # noqa: F401
    DIFFERENTIATED_RANK_TOL,
    AKSTrajectory,
    CayleyTransform,
    Factorization,
    InfinitesimalSplit,
    LocalDescendentGroup,
    aks_flow,
    cayley_group_check,
    cayley_transform,
    factorization_check,
    factorize,
    local_descendent_group,
    plus_operator_check,
    split,
    stationary_covector,
    unit_directions,
)
from .matched_pair import (  # noqa: F401
    GroupMatchedPair,
    MatchedPairAlg,
    RBOMatchedPair,
    matched_pair_algebra_check,
    matched_pair_from_rbo,
    matched_pair_group_check,
)

__all__ = [
    "AKSTrajectory",
    "DIFFERENTIATED_RANK_TOL",
    "CayleyTransform",
    "Factorization",
    "GroupMatchedPair",
    "InfinitesimalSplit",
    "LocalDescendentGroup",
    "MatchedPairAlg",
    "RBOMatchedPair",
    "aks_flow",
    "cayley_group_check",
    "cayley_transform",
    "factorization_check",
    "factorize",
    "local_descendent_group",
    "matched_pair_algebra_check",
    "matched_pair_from_rbo",
    "matched_pair_group_check",
    "plus_operator_check",
    "split",
    "stationary_covector",
    "unit_directions",
]
