"""Built-in Lie algebras and their matrix realizations."""

from __future__ import annotations

import re
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..kernel import lstsq_residual
from .algebra import LieAlgebra

CLEAN_THRESHOLD = 1e-13

_NAME_RE = re.compile(r"^([a-z_]+?)(?:\((\d+(?:\s*,\s*\d+)*)\)|(\d+))?$")


class CatalogError(RuntimeError):
    """Raised for unknown or malformed catalog names."""


def parse_name(name: str) -> Tuple[str, Tuple[int, ...]]:
    """Split ``euclidean(3)`` / ``euclidean3`` / ``gl_block(1,1)`` into base name and integer arguments."""
    text = name.strip().lower().replace(" ", "")
    match = _NAME_RE.match(text)
    if not match:
        raise CatalogError(f"malformed name {name!r}")
    base, paren_args, suffix = match.groups()
    if paren_args:
        return base, tuple(int(p) for p in paren_args.split(","))
    if suffix:
        return base, (int(suffix),)
    return base, ()


def unit(n: int, i: int, j: int) -> np.ndarray:
    E = np.zeros((n, n))
    E[i, j] = 1.0
    return E


def algebra_from_matrices(
    basis: Sequence[np.ndarray],
    labels: Optional[Sequence[str]] = None,
    name: str = "",
    tol: float = 1e-10,
) -> LieAlgebra:
    """
    Structure constants of the span of ``basis`` under the matrix commutator.

    Raises:
        CatalogError: if the span is not closed under commutators.
    """
    mats = [np.asarray(b, dtype=float) for b in basis]
    d = len(mats)
    flat = np.column_stack([m.ravel() for m in mats]) if d else np.zeros((0, 0))
    C = np.zeros((d, d, d))
    for i, j in combinations(range(d), 2):
        comm = mats[i] @ mats[j] - mats[j] @ mats[i]
        coords, residual = lstsq_residual(flat, comm.ravel())
        if residual > tol:
            raise CatalogError(f"basis of {name or 'matrix algebra'} is not closed: [b{i}, b{j}] off by {residual:.3e}")
        coords = np.where(np.abs(coords) < CLEAN_THRESHOLD, 0.0, coords)
        C[i, j] = coords
        C[j, i] = -coords
    return LieAlgebra.from_tensor(C, labels, name=name)


def so3_basis() -> List[np.ndarray]:
    """Cross-product basis: [L1, L2] = L3 and cyclic."""
    L1 = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
    L2 = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    L3 = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    return [L1, L2, L3]


def euclidean_basis(n: int) -> List[np.ndarray]:
    """so(n) ⋉ ℝⁿ inside gl(n+1): rotations E_ij − E_ji (i<j) first, then translations E_{a,n}."""
    size = n + 1
    rotations = [unit(size, i, j) - unit(size, j, i) for i, j in combinations(range(n), 2)]
    translations = [unit(size, a, n) for a in range(n)]
    return rotations + translations


def euclidean_labels(n: int) -> List[str]:
    return [f"L{i}{j}" for i, j in combinations(range(n), 2)] + [f"T{a}" for a in range(n)]


def gl_basis(n: int) -> List[np.ndarray]:
    """E_ij in row-major order."""
    return [unit(n, i, j) for i in range(n) for j in range(n)]


def gl_labels(n: int) -> List[str]:
    return [f"E{i}{j}" for i in range(n) for j in range(n)]


def up2_basis() -> List[np.ndarray]:
    """Upper-triangular 2×2 matrices: E00, E01, E11."""
    return [unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 1)]


def vectors_basis(n: int) -> List[np.ndarray]:
    """ℝⁿ as translations E_{a,n} inside gl(n+1)."""
    return [unit(n + 1, a, n) for a in range(n)]


def so3() -> LieAlgebra:
    C = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        C[i, j, k] = 1.0
        C[j, i, k] = -1.0
    return LieAlgebra.from_tensor(C, ("L1", "L2", "L3"), name="so3")


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(dim=n, labels=tuple(f"v{i}" for i in range(n)), pairs={}, name=f"abelian({n})")


def up2() -> LieAlgebra:
    return algebra_from_matrices(up2_basis(), ("E00", "E01", "E11"), name="up2")


def gl(n: int) -> LieAlgebra:
    return algebra_from_matrices(gl_basis(n), gl_labels(n), name=f"gl({n})")


def euclidean(n: int) -> LieAlgebra:
    return algebra_from_matrices(euclidean_basis(n), euclidean_labels(n), name=f"euclidean({n})")


_CATALOG: Dict[str, Callable[..., LieAlgebra]] = {
    "so": lambda n=3: so3() if n == 3 else _unsupported(f"so({n})"),
    "up": lambda n=2: up2() if n == 2 else _unsupported(f"up({n})"),
    "abelian": abelian,
    "gl": gl,
    "euclidean": euclidean,
}


def _unsupported(name: str) -> LieAlgebra:
    raise CatalogError(f"no catalog entry for {name}")


def algebra_by_name(name: str) -> LieAlgebra:
    """Resolve ``so3``, ``up2``, ``abelian(n)``, ``gl(n)``, ``euclidean(n)``."""
    base, args = parse_name(name)
    factory = _CATALOG.get(base)
    if factory is None:
        raise CatalogError(f"unknown algebra {name!r}")
    try:
        return factory(*args)
    except TypeError as exc:
        raise CatalogError(f"wrong arguments for {name!r}") from exc
