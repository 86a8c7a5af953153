"""Differentiation, local integration and the Van Est map between group and algebra operators."""

from .differentiate import (  # noqa: F401
    algebra_action,
    descendent_bracket,
    descendent_compat_check,
    descendent_exp,
    diff_action,
    diff_group_rbo,
    differentiate_with_step,
    group_map_tangent,
    theta_tangent,
)
from .integrate import (  # noqa: F401
    IntegrationGateError,
    IntegrationRadiusError,
    LocalRBO,
    agreement_check,
    check_local_rbo,
    integrate_rbo,
    integrating_action,
    roundtrip_check,
)
from .van_est import (  # noqa: F401
    alternating_check,
    check_morphism_integration,
    van_est,
    van_est_evaluate,
    van_est_square_check,
)

__all__ = [
    "IntegrationGateError",
    "IntegrationRadiusError",
    "LocalRBO",
    "agreement_check",
    "algebra_action",
    "alternating_check",
    "check_local_rbo",
    "check_morphism_integration",
    "descendent_bracket",
    "descendent_compat_check",
    "descendent_exp",
    "diff_action",
    "diff_group_rbo",
    "differentiate_with_step",
    "group_map_tangent",
    "integrate_rbo",
    "integrating_action",
    "roundtrip_check",
    "theta_tangent",
    "van_est",
    "van_est_evaluate",
    "van_est_square_check",
]
