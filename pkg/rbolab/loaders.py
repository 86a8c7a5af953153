"""
JSON input files: Lie algebras, relative Rota-Baxter operators, modified
r-matrices and matrix group descriptors.

Algebra references inside an operator file may be inline objects,
``{"catalog": "<name>"}`` or ``{"ref": "<path>"}`` relative to the file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from .group.core import MatrixGroup
from .group.registry import RegistryError, group_by_name
from .kernel import DimensionError
from .lie.algebra import ActionPhi, LieAlgebra
from .lie.catalog import CatalogError, algebra_by_name
from .log import get_logger
from .rbo.operator import ModifiedR, RelRBO

logger = get_logger(__name__)

MAX_REF_DEPTH = 8


class FixtureError(RuntimeError):
    """Raised when an input file is missing or malformed; the message names the file and the offending key."""


def read_json(path: Path) -> Any:
    path = Path(path)
    if not path.exists():
        raise FixtureError(f"{path}: file not found")
    try:
        with path.open("r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _require(data: Any, key: str, where: str) -> Any:
    if not isinstance(data, dict):
        raise FixtureError(f"{where}: expected an object")
    if key not in data:
        raise FixtureError(f"{where}: missing key {key!r}")
    return data[key]


def _matrix(value: Any, where: str, shape: Optional[tuple] = None) -> np.ndarray:
    try:
        m = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FixtureError(f"{where}: not a numeric matrix") from exc
    if shape is not None and m.size == 0 and 0 in shape:
        m = m.reshape(shape)
    if m.ndim != 2:
        raise FixtureError(f"{where}: expected a 2-d matrix, got shape {m.shape}")
    if shape is not None and m.shape != shape:
        raise FixtureError(f"{where}: expected shape {shape}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise FixtureError(f"{where}: matrix entries must be finite")
    return m


def parse_algebra(data: Any, where: str) -> LieAlgebra:
    """{"dim", "labels", "brackets": [[i, j, [k, c], ...], ...]} with i < j."""
    dim = _require(data, "dim", where)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise FixtureError(f"{where}.dim: expected a nonnegative integer")
    labels = data.get("labels") or [f"e{i}" for i in range(dim)]
    if len(labels) != dim:
        raise FixtureError(f"{where}.labels: expected {dim} labels, got {len(labels)}")
    pairs: Dict[tuple, np.ndarray] = {}
    for n, entry in enumerate(data.get("brackets", [])):
        at = f"{where}.brackets[{n}]"
        if not isinstance(entry, list) or len(entry) < 2:
            raise FixtureError(f"{at}: expected [i, j, [k, c], ...]")
        i, j = entry[0], entry[1]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)) or not 0 <= i < j < dim:
            raise FixtureError(f"{at}: indices must satisfy 0 <= i < j < {dim}")
        vec = pairs.setdefault((i, j), np.zeros(dim))
        for term in entry[2:]:
            if not (isinstance(term, list) and len(term) == 2 and isinstance(term[0], int) and 0 <= term[0] < dim):
                raise FixtureError(f"{at}: terms must be [k, c] with 0 <= k < {dim}")
            try:
                vec[term[0]] += float(term[1])
            except (TypeError, ValueError) as exc:
                raise FixtureError(f"{at}: coefficient {term[1]!r} is not a number") from exc
    return LieAlgebra(dim, tuple(str(label) for label in labels), pairs, str(data.get("name", "")))


def resolve_algebra(value: Any, where: str, base_dir: Path, depth: int = 0) -> LieAlgebra:
    """Inline algebra, ``{"catalog": name}`` or ``{"ref": path}``."""
    if depth > MAX_REF_DEPTH:
        raise FixtureError(f"{where}: algebra references nested too deeply")
    if not isinstance(value, dict):
        raise FixtureError(f"{where}: expected an algebra object or reference")
    if "catalog" in value:
        try:
            return algebra_by_name(str(value["catalog"]))
        except CatalogError as exc:
            raise FixtureError(f"{where}.catalog: {exc}") from exc
    if "ref" in value:
        path = (base_dir / str(value["ref"])).resolve()
        return resolve_algebra(read_json(path), str(path), path.parent, depth + 1)
    return parse_algebra(value, where)


def load_algebra(path: Path) -> LieAlgebra:
    path = Path(path)
    return resolve_algebra(read_json(path), str(path), path.parent)


def parse_operator(data: Any, where: str, base_dir: Path) -> RelRBO:
    """{"name", "g", "h", "phi": "ad" | "zero" | [matrices], "B"}; ``h`` defaults to ``g``."""
    g = resolve_algebra(_require(data, "g", where), f"{where}.g", base_dir)
    h = resolve_algebra(data["h"], f"{where}.h", base_dir) if "h" in data else g
    phi_entry = data.get("phi", "ad")
    if phi_entry == "ad":
        if h is not g and (h.dim != g.dim or not np.allclose(h.structure, g.structure)):
            raise FixtureError(f"{where}.phi: the adjoint action needs h = g")
        h = g
        phi = ActionPhi.adjoint(g)
    elif phi_entry == "zero":
        phi = ActionPhi.zero(g, h)
    elif isinstance(phi_entry, list):
        if len(phi_entry) != g.dim:
            raise FixtureError(f"{where}.phi: expected {g.dim} matrices, got {len(phi_entry)}")
        mats = [_matrix(m, f"{where}.phi[{i}]", (h.dim, h.dim)) for i, m in enumerate(phi_entry)]
        phi = ActionPhi(g, h, np.stack(mats) if mats else np.zeros((0, h.dim, h.dim)))
    else:
        raise FixtureError(f"{where}.phi: expected 'ad', 'zero' or a list of matrices")
    B = _matrix(_require(data, "B", where), f"{where}.B", (g.dim, h.dim))
    try:
        return RelRBO(g, h, phi, B, str(data.get("name", "")))
    except DimensionError as exc:
        raise FixtureError(f"{where}: {exc}") from exc


def load_operator(path: Path) -> RelRBO:
    path = Path(path)
    return parse_operator(read_json(path), str(path), path.parent)


def load_modified_r(path: Path) -> ModifiedR:
    """{"name", "g", "R"}."""
    path = Path(path)
    data = read_json(path)
    where = str(path)
    g = resolve_algebra(_require(data, "g", where), f"{where}.g", path.parent)
    R = _matrix(_require(data, "R", where), f"{where}.R", (g.dim, g.dim))
    return ModifiedR(g, R, str(data.get("name", "")))


def parse_group(data: Any, where: str) -> MatrixGroup:
    """{"name", "ambient_dim", "algebra_basis": [matrices]} or {"registry": name}."""
    if isinstance(data, dict) and "registry" in data:
        try:
            return group_by_name(str(data["registry"]))
        except RegistryError as exc:
            raise FixtureError(f"{where}.registry: {exc}") from exc
    n = _require(data, "ambient_dim", where)
    if not isinstance(n, int) or n < 1:
        raise FixtureError(f"{where}.ambient_dim: expected a positive integer")
    raw = _require(data, "algebra_basis", where)
    if not isinstance(raw, list) or not raw:
        raise FixtureError(f"{where}.algebra_basis: expected a nonempty list of matrices")
    basis: List[np.ndarray] = [_matrix(m, f"{where}.algebra_basis[{i}]", (n, n)) for i, m in enumerate(raw)]
    group = MatrixGroup(str(data.get("name", where)), tuple(basis), data.get("labels"))
    try:
        group.validate()
    except (DimensionError, CatalogError) as exc:
        raise FixtureError(f"{where}.algebra_basis: {exc}") from exc
    return group


def load_group(path: Path) -> MatrixGroup:
    path = Path(path)
    return parse_group(read_json(path), str(path))
