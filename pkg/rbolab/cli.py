"""rbolab command-line interface."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .applications import (
    DIFFERENTIATED_RANK_TOL,
    aks_flow,
    cayley_transform,
    factorization_check,
    factorize,
    matched_pair_from_rbo,
    matched_pair_group_check,
    split,
    unit_directions,
)
from .config import OUTPUT_FORMATS, ConfigError, Settings, load_settings
from .correspondence import (
    IntegrationGateError,
    IntegrationRadiusError,
    agreement_check,
    check_local_rbo,
    diff_group_rbo,
    integrate_rbo,
    integrating_action,
    roundtrip_check,
    van_est,
    van_est_square_check,
)
from .group import (
    DomainEscapeError,
    GroupCochain,
    RegistryError,
    check_descendent_group,
    check_group_action,
    check_group_rbo,
    check_theta_action,
    graph_subgroup_check,
    group_by_name,
    operator_by_name,
)
from .kernel import DimensionError, DivergenceError, SingularityError, Tolerance, UnsupportedDegreeError
from .lie.algebra import ActionError, check_jacobi
from .lie.catalog import CatalogError
from .loaders import FixtureError, load_algebra, load_modified_r, load_operator
from .log import get_logger, setup_logging
from .rbo import (
    NotAdjointError,
    RelRBO,
    RotaBaxterError,
    check_deformation,
    check_mybe,
    check_rbo,
    cohomology_table,
    deformation_directions,
    descendent_check,
    from_modified_r,
    graph_subalgebra_check,
    mixed_identity_check,
    theta_rep_check,
    to_modified_r,
)
from .report import REPORT_COLUMNS, CheckReport, combine, render_csv, render_json, render_text

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

AKS_TOL = 1e-8
ROUNDTRIP_TOL = 1e-6
DIFFERENTIATED_CHECK_TOL = 1e-6
DD_TOL = 1e-12
FACTORIZE_TIMES = (-0.2, -0.1, -0.05, 0.05, 0.1, 0.2)
COHOMOLOGY_COLUMNS = ("k", "dim_C", "rank_D", "dim_ker", "dim_H")

INPUT_ERRORS = (FixtureError, DimensionError, RegistryError, ConfigError, CatalogError, NotAdjointError, ActionError)
NUMERIC_ERRORS = (
    IntegrationRadiusError,
    IntegrationGateError,
    RotaBaxterError,
    DivergenceError,
    SingularityError,
    DomainEscapeError,
    UnsupportedDegreeError,
)


def _auto_int(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rbolab", description="Relative Rota-Baxter operator laboratory.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging.")
    parser.add_argument("--tol-abs", type=float, help="Absolute pivot tolerance for rank decisions.")
    parser.add_argument("--tol-rel", type=float, help="Relative pivot tolerance for rank decisions.")
    parser.add_argument("--check-tol", type=float, help="Pass threshold for identity checks.")
    parser.add_argument("--seed", type=_auto_int, help="Sampling seed (0x prefix accepted).")
    parser.add_argument("--samples", type=int, help="Number of sampled group points.")
    parser.add_argument("--radius", type=float, help="Log-ball radius for sampling and local operators.")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, help="Output format.")

    subparsers = parser.add_subparsers(dest="command", required=True)

    check = subparsers.add_parser("check", help="Run verification suites on input files or registry operators.")
    check.add_argument("--rbo", type=Path, action="append", default=[], help="Relative Rota-Baxter operator file.")
    check.add_argument("--mybe", type=Path, action="append", default=[], help="Modified r-matrix file.")
    check.add_argument("--algebra", type=Path, action="append", default=[], help="Lie algebra file.")
    check.add_argument("--group-operator", action="append", default=[], help="Registry group operator name.")

    cohomology = subparsers.add_parser("cohomology", help="Cohomology table of an operator.")
    add_operator_source(cohomology)
    cohomology.add_argument("--kmax", type=int, help="Largest degree in the table.")

    integrate = subparsers.add_parser("integrate", help="Integrate an operator to a local group operator.")
    add_operator_source(integrate)
    integrate.add_argument("--group", help="Registry group for both G and H when integrating a file.")
    integrate.add_argument("--group-h", help="Registry group for H when it differs from G.")

    vanest = subparsers.add_parser("vanest", help="Van Est map and its commuting square on a registry operator.")
    vanest.add_argument("--group", required=True, help="Registry group operator name.")
    vanest.add_argument("--degree", type=int, choices=(1, 2), default=2, help="Degree of the group cochain.")

    factor = subparsers.add_parser("factorize", help="Factorize exp(2tX0) with a registry group operator.")
    factor.add_argument("--group", required=True, help="Registry group operator name.")
    factor.add_argument("--t", type=float, help="Single time; defaults to a grid of six times.")
    factor.add_argument("--directions", type=int, default=20, help="Number of seeded unit directions X0.")

    aks = subparsers.add_parser("aks", help="AKS flow along the factorization.")
    aks.add_argument("--group", required=True, help="Registry group operator name.")
    aks.add_argument("--tmax", type=float, default=0.2, help="Final time of the grid.")
    aks.add_argument("--steps", type=int, default=4, help="Number of grid intervals.")
    aks.add_argument("--casimir", action="store_true", help="Also check that |L(t)| is constant.")

    matched = subparsers.add_parser("matched", help="Matched pairs from an operator.")
    matched.add_argument("--rbo", type=Path, help="Operator file for the Lie algebra construction.")
    matched.add_argument("--group", help="Registry group operator for the group construction.")

    split_cmd = subparsers.add_parser("split", help="Infinitesimal split and Cayley transform of an operator.")
    add_operator_source(split_cmd)

    deform = subparsers.add_parser("deform", help="Deformation directions of an operator and their checks.")
    add_operator_source(deform)

    return parser


def add_operator_source(sub) -> None:
    source = sub.add_mutually_exclusive_group(required=True)
    source.add_argument("path", type=Path, nargs="?", help="Operator file.")
    source.add_argument("--operator", help="Registry group operator, differentiated.")


def apply_overrides(settings: Settings, args) -> Settings:
    for attr, value in (
        ("tol_abs", args.tol_abs),
        ("tol_rel", args.tol_rel),
        ("check_tol", args.check_tol),
        ("seed", args.seed),
        ("samples", args.samples),
        ("radius", args.radius),
        ("output_format", args.format),
        ("kmax", getattr(args, "kmax", None)),
    ):
        if value is not None:
            setattr(settings, attr, value)
    if args.verbose:
        settings.debug = True
    settings.validate()
    return settings


def _flatten(report: CheckReport, prefix: str = "") -> List[Dict[str, Any]]:
    name = f"{prefix}{report.name}"
    rows = [{"check": name, "status": report.passed, "residual": report.residual, "tol": report.tol, "skipped": report.skipped}]
    for sub in report.details.get("checks", []):
        rows.extend(_flatten_dict(sub, f"{name}/"))
    return rows


def _flatten_dict(payload: Dict[str, Any], prefix: str) -> List[Dict[str, Any]]:
    name = f"{prefix}{payload['name']}"
    rows = [
        {
            "check": name,
            "status": payload["passed"],
            "residual": payload["residual"],
            "tol": payload["tol"],
            "skipped": payload.get("skipped", 0),
        }
    ]
    for sub in payload.get("details", {}).get("checks", []):
        rows.extend(_flatten_dict(sub, f"{name}/"))
    return rows


def emit(settings: Settings, command: str, reports: Sequence[CheckReport], extra: Optional[Dict[str, Any]] = None) -> int:
    """Print the reports in the configured format and return the exit code."""
    passed = all(r.passed for r in reports)
    if settings.output_format == "json":
        payload: Dict[str, Any] = {"command": command, "passed": passed, "reports": [r.to_dict() for r in reports]}
        if extra:
            payload.update(extra)
        print(render_json(payload))
    else:
        rows = [row for r in reports for row in _flatten(r)]
        render = render_csv if settings.output_format == "csv" else render_text
        print(render(rows, REPORT_COLUMNS))
    return EXIT_OK if passed else EXIT_FAILED


def _rbo_suite(o: RelRBO, settings: Settings) -> CheckReport:
    tol = settings.check_tol
    reports = [check_jacobi(o.g, tol), check_rbo(o, tol, samples=settings.samples, seed=settings.seed)]
    if o.h is not o.g:
        reports.insert(1, check_jacobi(o.h, tol))
    if reports[-1].passed:
        reports += [graph_subalgebra_check(o, tol), descendent_check(o, tol), theta_rep_check(o, tol), mixed_identity_check(o, tol)]
        if o.is_adjoint:
            reports.append(check_mybe(to_modified_r(o), 4.0 * tol))
    return combine(f"rbo:{o.name or 'operator'}", reports)


def _group_suite(name: str, settings: Settings) -> CheckReport:
    o = operator_by_name(name)
    args = (settings.samples, settings.check_tol, settings.radius, settings.seed)
    return combine(
        f"group:{o.name}",
        [
            check_group_action(o.action, *args),
            check_group_rbo(o, *args),
            graph_subgroup_check(o, *args),
            check_descendent_group(o, *args),
            check_theta_action(o, *args),
        ],
    )


def run_check_and_print(args, settings: Settings) -> int:
    reports: List[CheckReport] = []
    for path in args.algebra:
        report = check_jacobi(load_algebra(path), settings.check_tol)
        report.name = f"algebra:{path.name}"
        reports.append(report)
    for path in args.rbo:
        reports.append(_rbo_suite(load_operator(path), settings))
    for path in args.mybe:
        r = load_modified_r(path)
        bridge = check_rbo(from_modified_r(r), settings.check_tol)
        bridge.name = "rbo_bridge"
        reports.append(combine(f"mybe:{r.name or path.name}", [check_mybe(r, 4.0 * settings.check_tol), bridge]))
    for name in args.group_operator:
        reports.append(_group_suite(name, settings))
    if not reports:
        raise FixtureError("check needs at least one of --rbo, --mybe, --algebra, --group-operator")
    return emit(settings, "check", reports)


def resolve_operator(args, settings: Settings) -> Tuple[RelRBO, float, Tolerance]:
    """Operator with the check and rank tolerances its origin supports; registry operators are differentiated."""
    if args.path is not None:
        return load_operator(args.path), settings.check_tol, settings.tolerance()
    o = diff_group_rbo(operator_by_name(args.operator), settings.fd_step)
    return o, max(settings.check_tol, DIFFERENTIATED_CHECK_TOL), DIFFERENTIATED_RANK_TOL


def run_cohomology_and_print(args, settings: Settings) -> int:
    o, check_tol, rank_tol = resolve_operator(args, settings)
    table = cohomology_table(o, settings.kmax, rank_tol)
    dd_tol = DD_TOL if args.path is not None else check_tol
    passed = bool(table["dd_residual"] <= dd_tol)
    if not passed:
        logger.warning("D(k+1) D(k) residual %.3e exceeds %.1e", table["dd_residual"], dd_tol)
    if settings.output_format == "json":
        print(render_json({"command": "cohomology", **table, "dd_tol": dd_tol, "passed": passed}))
    else:
        render = render_csv if settings.output_format == "csv" else render_text
        print(render(table["rows"], COHOMOLOGY_COLUMNS))
        if settings.output_format == "text":
            print(f"max |D(k+1) D(k)| = {table['dd_residual']:.3e} ({'pass' if passed else 'FAIL'})")
    return EXIT_OK if passed else EXIT_FAILED


def run_integrate_and_print(args, settings: Settings) -> int:
    analytic = None
    tol = settings.check_tol
    if args.path is not None:
        if not args.group:
            raise FixtureError("integrating a file needs --group")
        o = load_operator(args.path)
        G = group_by_name(args.group)
        H = group_by_name(args.group_h) if args.group_h and args.group_h != args.group else G
        action = integrating_action(o, G, H)
    else:
        analytic = operator_by_name(args.operator)
        o = diff_group_rbo(analytic, settings.fd_step)
        G, H, action = analytic.G, analytic.H, analytic.action
        tol = max(tol, DIFFERENTIATED_CHECK_TOL)
    local = integrate_rbo(o, G, H, action, settings.radius)
    reports = [
        roundtrip_check(local, ROUNDTRIP_TOL),
        check_local_rbo(local, settings.samples, tol, seed=settings.seed),
    ]
    if analytic is not None:
        reports.append(agreement_check(local, analytic, settings.samples, tol, settings.radius, settings.seed))
    return emit(settings, "integrate", reports, {"operator": local.summary()})


def sample_cochain(o, degree: int, seed: int) -> GroupCochain:
    """Seeded degree-1 constant or degree-2 cochain F(h) = M log h + |log h|² c."""
    rng = np.random.default_rng(seed)
    if degree == 1:
        return GroupCochain.constant(rng.standard_normal(o.G.dim), "constant")
    M = rng.standard_normal((o.G.dim, o.H.dim))
    c = rng.standard_normal(o.G.dim)

    def f(hs):
        x = o.H.log(hs[0])
        return M @ x + float(x @ x) * c

    return GroupCochain(2, f, "quadratic")


def run_vanest_and_print(args, settings: Settings) -> int:
    o = operator_by_name(args.group)
    F = sample_cochain(o, args.degree, settings.seed)
    report = van_est_square_check(o, F)
    return emit(settings, "vanest", [report], {"van_est": van_est(o, F).coords})


def run_factorize_and_print(args, settings: Settings) -> int:
    o = operator_by_name(args.group)
    directions = unit_directions(o.G.dim, args.directions, settings.seed)
    if args.t is not None:
        report = factorization_check(o, directions, (args.t,), settings.check_tol)
        sample = factorize(o, directions[0], args.t).to_dict()
    else:
        report = factorization_check(o, directions, FACTORIZE_TIMES, settings.check_tol)
        sample = factorize(o, directions[0], FACTORIZE_TIMES[-1]).to_dict()
    return emit(settings, "factorize", [report], {"factorization": sample})


def run_aks_and_print(args, settings: Settings) -> int:
    if args.steps < 1:
        raise FixtureError("--steps must be at least 1")
    o = operator_by_name(args.group)
    X0 = unit_directions(o.G.dim, 1, settings.seed)[0]
    ts = np.linspace(0.0, args.tmax, args.steps + 1)
    trajectory = aks_flow(o, X0, ts=[float(t) for t in ts])
    report = trajectory.report(max(AKS_TOL, settings.check_tol), casimir=args.casimir)
    if settings.output_format == "json":
        print(render_json({"command": "aks", "passed": report.passed, "rows": trajectory.rows, "report": report.to_dict()}))
    else:
        render = render_csv if settings.output_format == "csv" else render_text
        print(render(trajectory.rows, trajectory.columns))
    return EXIT_OK if report.passed else EXIT_FAILED


def run_matched_and_print(args, settings: Settings) -> int:
    reports: List[CheckReport] = []
    if args.rbo is not None:
        reports.append(matched_pair_from_rbo(load_operator(args.rbo), settings.check_tol, settings.tolerance()).report)
    if args.group is not None:
        o = operator_by_name(args.group)
        reports.append(matched_pair_group_check(o, settings.samples, settings.check_tol, settings.radius, settings.seed))
    if not reports:
        raise FixtureError("matched needs --rbo or --group")
    return emit(settings, "matched", reports)


def run_split_and_print(args, settings: Settings) -> int:
    o, tol, rank_tol = resolve_operator(args, settings)
    s = split(o, tol, rank_tol)
    cayley = cayley_transform(s, tol, rank_tol)
    return emit(settings, "split", [cayley.report], {"dims": s.dims(), "cayley": cayley.matrix})


def run_deform_and_print(args, settings: Settings) -> int:
    o, tol, rank_tol = resolve_operator(args, settings)
    directions = deformation_directions(o, rank_tol, tol)
    reports = [check_deformation(o, d, tol) for d in directions]
    return emit(settings, "deform", reports, {"directions": [d.Bhat for d in directions]})


COMMANDS = {
    "check": run_check_and_print,
    "cohomology": run_cohomology_and_print,
    "integrate": run_integrate_and_print,
    "vanest": run_vanest_and_print,
    "factorize": run_factorize_and_print,
    "aks": run_aks_and_print,
    "matched": run_matched_and_print,
    "split": run_split_and_print,
    "deform": run_deform_and_print,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = apply_overrides(load_settings(), args)
    except ConfigError as exc:
        print(f"rbolab: {exc}", file=sys.stderr)
        return EXIT_INPUT

    setup_logging(settings.debug)

    try:
        return COMMANDS[args.command](args, settings)
    except INPUT_ERRORS as exc:
        logger.error("Input error: %s", exc)
        print(f"rbolab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NUMERIC_ERRORS as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"rbolab: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
