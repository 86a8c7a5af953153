"""Matrix Lie groups, group actions and Rota-Baxter operators on groups."""

from .cochain import GroupCochain, d_squared, group_cochain_differential  # noqa: F401
from .core import (  # noqa: F401
    DomainEscapeError,
    GroupAction,
    GroupRBO,
    MatrixGroup,
    sample_elements,
    sample_tuples,
)
from .descendent import (  # noqa: F401
    check_descendent_group,
    check_group_action,
    check_group_rbo,
    check_group_rbo_hom,
    check_theta_action,
    dag,
    graph_subgroup_check,
    star,
    theta_group_action,
    theta_linearized,
)
from .registry import RegistryError, group_by_name, operator_by_name  # noqa: F401
from .semidirect import SemidirectGroup  # noqa: F401

__all__ = [
    "DomainEscapeError",
    "GroupAction",
    "GroupCochain",
    "GroupRBO",
    "MatrixGroup",
    "RegistryError",
    "SemidirectGroup",
    "check_descendent_group",
    "check_group_action",
    "check_group_rbo",
    "check_group_rbo_hom",
    "check_theta_action",
    "d_squared",
    "dag",
    "graph_subgroup_check",
    "group_by_name",
    "group_cochain_differential",
    "operator_by_name",
    "sample_elements",
    "sample_tuples",
    "star",
    "theta_group_action",
    "theta_linearized",
]
