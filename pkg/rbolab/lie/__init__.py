"""Lie algebras by structure constants, actions and representations."""

from .algebra import (  # noqa: F401
    ActionError,
    ActionPhi,
    LieAlgebra,
    LinearMap,
    Representation,
    bracket,
    check_action,
    check_jacobi,
    check_representation,
    direct_sum,
    is_homomorphism,
    is_ideal,
    is_subalgebra,
    orthonormal_span,
    semidirect_algebra,
    structure_residual,
)
from .catalog import CatalogError, algebra_by_name, algebra_from_matrices, parse_name  # noqa: F401

__all__ = [
    "ActionError",
    "ActionPhi",
    "CatalogError",
    "LieAlgebra",
    "LinearMap",
    "Representation",
    "algebra_by_name",
    "algebra_from_matrices",
    "bracket",
    "check_action",
    "check_jacobi",
    "check_representation",
    "direct_sum",
    "is_homomorphism",
    "is_ideal",
    "is_subalgebra",
    "orthonormal_span",
    "parse_name",
    "semidirect_algebra",
    "structure_residual",
]
