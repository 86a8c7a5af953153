"""Relative Rota-Baxter operators on Lie algebras, their cohomology and deformations."""

from .cohomology import (  # noqa: F401
    Cochain,
    DifferentialCache,
    check_cochain_map,
    coboundary_matrix,
    coboundary_of,
    cochain_dim,
    cochain_tuples,
    cohomology_dim,
    cohomology_table,
    differential_matrix,
    pushforward_cochain,
    pushforward_matrix,
)
from .deformation import (  # noqa: F401
    DeformationDirection,
    check_deformation,
    deformation_directions,
    deformation_equivalence,
    r_matrix_deformation_bridge,
    weight_zero_residual,
)
from .operator import (  # noqa: F401
    ModifiedR,
    NotAdjointError,
    RelRBO,
    RotaBaxterError,
    check_mybe,
    check_rbo,
    check_rbo_hom,
    check_rbo_homomorphisms,
    descendent_algebra,
    descendent_check,
    descendent_structure,
    from_modified_r,
    graph_subalgebra_check,
    mixed_identity_check,
    require_rbo,
    theta_matrices,
    theta_rep,
    theta_rep_check,
    to_modified_r,
)

__all__ = [
    "Cochain",
    "DeformationDirection",
    "DifferentialCache",
    "ModifiedR",
    "NotAdjointError",
    "RelRBO",
    "RotaBaxterError",
    "check_cochain_map",
    "check_deformation",
    "check_mybe",
    "check_rbo",
    "check_rbo_hom",
    "check_rbo_homomorphisms",
    "coboundary_matrix",
    "coboundary_of",
    "cochain_dim",
    "cochain_tuples",
    "cohomology_dim",
    "cohomology_table",
    "deformation_directions",
    "deformation_equivalence",
    "descendent_algebra",
    "descendent_check",
    "descendent_structure",
    "differential_matrix",
    "from_modified_r",
    "graph_subalgebra_check",
    "mixed_identity_check",
    "pushforward_cochain",
    "pushforward_matrix",
    "r_matrix_deformation_bridge",
    "require_rbo",
    "theta_matrices",
    "theta_rep",
    "theta_rep_check",
    "to_modified_r",
    "weight_zero_residual",
]
