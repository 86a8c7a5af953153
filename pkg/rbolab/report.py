"""Verification reports and their text, JSON and CSV renderings."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Sequence

import numpy as np

SCHEMA_VERSION = "rbo-lab/1"


@dataclass
class CheckReport:
    """Outcome of one verification: max residual against a tolerance."""

    name: str
    passed: bool
    residual: float
    tol: float
    skipped: int = 0
    details: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "tol": self.tol,
        }
        if self.skipped:
            payload["skipped"] = self.skipped
        if self.details:
            payload["details"] = self.details
        return payload


def residual_report(name: str, residual: float, tol: float, skipped: int = 0, **details: Any) -> CheckReport:
    """Build a report that passes iff residual ≤ tol."""
    residual = float(residual)
    return CheckReport(
        name=name,
        passed=bool(residual <= tol),
        residual=residual,
        tol=float(tol),
        skipped=skipped,
        details=dict(details),
    )


def combine(name: str, reports: Sequence[CheckReport], **details: Any) -> CheckReport:
    """Merge sub-reports: passes iff all pass, residual is the largest."""
    residual = max((r.residual for r in reports), default=0.0)
    tol = max((r.tol for r in reports), default=0.0)
    merged = dict(details)
    merged["checks"] = [r.to_dict() for r in reports]
    return CheckReport(
        name=name,
        passed=all(r.passed for r in reports),
        residual=residual,
        tol=tol,
        skipped=sum(r.skipped for r in reports),
        details=merged,
    )


def _jsonable(value: Any) -> Any:
    if isinstance(value, CheckReport):
        return _jsonable(value.to_dict())
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return str(value)
        return value
    return value


def render_json(payload: Mapping[str, Any]) -> str:
    """Stable JSON: sorted keys, schema tag, shortest round-trip floats."""
    body = {"schema": SCHEMA_VERSION}
    body.update(_jsonable(payload))
    return json.dumps(body, indent=2, sort_keys=True, allow_nan=False)


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.6g}"
    if isinstance(value, (bool, np.bool_)):
        return "pass" if value else "FAIL"
    return str(value)


def render_text(rows: Iterable[Mapping[str, Any]], columns: Sequence[str]) -> str:
    """Aligned plain-text table."""
    table: List[List[str]] = [list(columns)]
    for row in rows:
        table.append([_cell(row.get(col, "")) for col in columns])
    widths = [max(len(line[i]) for line in table) for i in range(len(columns))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(line, widths)).rstrip() for line in table]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_csv(rows: Iterable[Mapping[str, Any]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in (row.get(c, "") for c in columns)])
    return buffer.getvalue()


REPORT_COLUMNS = ("check", "status", "residual", "tol", "skipped")
