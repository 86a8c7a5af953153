"""Built-in matrix groups and analytic group Rota-Baxter operators, looked up by name."""

from __future__ import annotations

import math
from typing import Callable, Dict

import numpy as np

from ..lie.catalog import (
    CatalogError,
    euclidean_basis,
    euclidean_labels,
    gl_basis,
    gl_labels,
    parse_name,
    so3_basis,
    up2_basis,
    vectors_basis,
)
from ..log import get_logger
from .core import GroupAction, GroupRBO, MatrixGroup

logger = get_logger(__name__)

GL_BLOCK_RADIUS = 1.0


class RegistryError(RuntimeError):
    """Raised for unknown group or operator names."""


def so3_group() -> MatrixGroup:
    return MatrixGroup("so(3)", tuple(so3_basis()), ("L1", "L2", "L3"))


def euclidean_group(n: int) -> MatrixGroup:
    if n < 2:
        raise RegistryError("euclidean(n) needs n >= 2")
    return MatrixGroup(f"euclidean({n})", tuple(euclidean_basis(n)), tuple(euclidean_labels(n)))


def up2_group() -> MatrixGroup:
    return MatrixGroup("up2", tuple(up2_basis()), ("E00", "E01", "E11"))


def gl_group(n: int) -> MatrixGroup:
    return MatrixGroup(f"gl({n})", tuple(gl_basis(n)), tuple(gl_labels(n)))


def vector_group(n: int) -> MatrixGroup:
    return MatrixGroup(f"vectors({n})", tuple(vectors_basis(n)), tuple(f"v{a}" for a in range(n)), vector=True)


_GROUPS: Dict[str, Callable[..., MatrixGroup]] = {
    "so": lambda n=3: so3_group() if n == 3 else _unknown(f"so({n})"),
    "euclidean": euclidean_group,
    "up": lambda n=2: up2_group() if n == 2 else _unknown(f"up({n})"),
    "gl": gl_group,
    "vectors": vector_group,
}


def _unknown(name: str):
    raise RegistryError(f"unknown registry name {name!r}")


def _lookup(table: Dict[str, Callable], name: str, exact: Dict[str, Callable]):
    key = name.strip().lower().replace(" ", "")
    if key in exact:
        return exact[key]()
    try:
        base, args = parse_name(key)
    except CatalogError as exc:
        raise RegistryError(str(exc)) from exc
    factory = table.get(base)
    if factory is None:
        _unknown(name)
    try:
        return factory(*args)
    except TypeError as exc:
        raise RegistryError(f"wrong arguments for {name!r}") from exc


def group_by_name(name: str) -> MatrixGroup:
    """``so3``/``so(3)``, ``euclidean(n)``/``euclidean2``, ``up2``, ``gl(n)``, ``vectors(n)``."""
    return _lookup(_GROUPS, name, {})


def euclidean_operator(n: int) -> GroupRBO:
    """𝓑(A, α) = (I, −Aᵀα) on the Euclidean group with the adjoint action."""
    E = euclidean_group(n)

    def B(g):
        A = g[:n, :n]
        out = np.eye(n + 1)
        out[:n, n] = -A.T @ g[:n, n]
        return out

    return GroupRBO(E, E, GroupAction.adjoint(E), B, math.inf, f"euclidean({n})")


def up2_operator() -> GroupRBO:
    """𝓑(r) = [[1, r], [0, 1]] into the upper-triangular group, Φ(g)r = g₀₀·r."""
    G = up2_group()
    H = vector_group(1)
    action = GroupAction.linear(G, H, lambda g: np.array([[g[0, 0]]]), "scaling")

    def B(h):
        out = np.eye(2)
        out[0, 1] = h[0, 1]
        return out

    return GroupRBO(G, H, action, B, math.inf, "up2")


def gl_block_operator(p: int, q: int) -> GroupRBO:
    """
    𝓑(g) = g₋⁻¹ for the block factorization g = g₊g₋, g₊ block upper
    triangular and g₋ block lower unipotent; equivalently the lower factor of
    the block LU decomposition of g⁻¹. Defined while the leading block of g⁻¹
    is invertible; the domain is the log-ball of radius 1.
    """
    if p < 1 or q < 1:
        raise RegistryError("gl_block(p,q) needs p, q >= 1")
    n = p + q
    G = gl_group(n)

    def B(g):
        inv = np.linalg.inv(g)
        A = inv[:p, :p]
        C = inv[p:, :p]
        out = np.eye(n)
        out[p:, :p] = C @ np.linalg.inv(A)
        return out

    return GroupRBO(G, G, GroupAction.adjoint(G), B, GL_BLOCK_RADIUS, f"gl_block({p},{q})")


def so3_inverse_operator() -> GroupRBO:
    """𝓑(h) = h⁻¹ on SO(3) with the adjoint action; differentiates to B = −Id."""
    G = so3_group()
    return GroupRBO(G, G, GroupAction.adjoint(G), np.linalg.inv, math.inf, "so3_inverse")


def trivial_operator() -> GroupRBO:
    """𝓑 ≡ e on SO(3) with the adjoint action."""
    G = so3_group()
    return GroupRBO(G, G, GroupAction.adjoint(G), lambda h: np.eye(3), math.inf, "trivial")


def trivial_vectors_operator(n: int) -> GroupRBO:
    """𝓑 ≡ e with G = H = vectors(n) and the trivial action."""
    V = vector_group(n)
    return GroupRBO(V, V, GroupAction.trivial(V, V), lambda h: np.eye(n + 1), math.inf, f"trivial_vectors({n})")


_OPERATORS: Dict[str, Callable[..., GroupRBO]] = {
    "euclidean": euclidean_operator,
    "up": lambda n=2: up2_operator() if n == 2 else _unknown(f"up({n})"),
    "gl_block": gl_block_operator,
    "trivial_vectors": trivial_vectors_operator,
}

_EXACT_OPERATORS: Dict[str, Callable[[], GroupRBO]] = {
    "so3_inverse": so3_inverse_operator,
    "trivial": trivial_operator,
    "up2": up2_operator,
}


def operator_by_name(name: str) -> GroupRBO:
    """
    ``euclidean(n)``/``euclidean2``, ``up2``, ``gl_block(p,q)``,
    ``so3_inverse``, ``trivial``, ``trivial_vectors(n)``.
    """
    return _lookup(_OPERATORS, name, _EXACT_OPERATORS)


OPERATOR_NAMES = ("euclidean(2)", "euclidean(3)", "up2", "gl_block(1,1)", "so3_inverse", "trivial", "trivial_vectors(2)")
GROUP_NAMES = ("so(3)", "euclidean(2)", "euclidean(3)", "up2", "gl(2)", "vectors(2)")
