"""Command-line driver: verification, derivation and scan workflows.

Every subcommand writes a machine-readable report (JSON by default, CSV for
tabular scans) and exits 0 when all checks pass, 1 when a check fails, and 2
on usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import asymptotics, curvature, potentials, scalarflat
from .errors import ToricError

__all__ = ["RunReport", "CheckResult", "emit", "dispatch", "main"]


@dataclass
class CheckResult:
    name: str
    status: str
    measured: object = None
    expected: object = None
    tolerance: object = None


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: list[CheckResult] = field(default_factory=list)
    table: tuple[tuple[str, ...], list[tuple]] | None = None

    def check(self, name, measured=None, expected=None, tolerance=None, ok=None):
        if ok is None:
            ok = abs(measured - expected) <= tolerance
        self.results.append(
            CheckResult(name, "pass" if ok else "fail", measured, expected, tolerance)
        )

    def note(self, name, measured):
        self.results.append(CheckResult(name, "pass", measured))

    @property
    def overall(self) -> str:
        return "pass" if all(r.status == "pass" for r in self.results) else "fail"


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, (np.floating, np.integer)):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def emit(report: RunReport, fmt: str = "json", destination: str | None = None) -> None:
    """Write the report as JSON, or as CSV rows when it carries a table."""
    if fmt == "json":
        payload = {
            "command": report.command,
            "inputs": _jsonable(report.inputs),
            "results": [
                {
                    "name": r.name,
                    "status": r.status,
                    "measured": _jsonable(r.measured),
                    "expected": _jsonable(r.expected),
                    "tolerance": _jsonable(r.tolerance),
                }
                for r in report.results
            ],
            "overall": report.overall,
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        lines = []
        if report.table is not None:
            header, rows = report.table
            lines.append(",".join(header))
            lines.extend(",".join(repr(v) if isinstance(v, float) else str(v) for v in row) for row in rows)
        else:
            lines.append("name,status,measured,expected,tolerance")
            lines.extend(
                f"{r.name},{r.status},{_jsonable(r.measured)},{_jsonable(r.expected)},{_jsonable(r.tolerance)}"
                for r in report.results
            )
        if report.table is not None:
            for r in report.results:
                if isinstance(r.measured, (list, tuple)):
                    continue  # tabular payload already emitted as rows
                lines.append(
                    f"# {r.name}={_jsonable(r.measured)} expected={_jsonable(r.expected)} "
                    f"tolerance={_jsonable(r.tolerance)} status={r.status}"
                )
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")

    if destination in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(destination, "w") as handle:
            handle.write(text)


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _parse_float_range(text: str) -> tuple[float, float]:
    lo, hi = text.split("..", 1)
    return float(lo), float(hi)


def _parse_floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_verify_catalog(args) -> RunReport:
    report = RunReport(
        "verify-catalog",
        {"dims": args.dims, "tol": args.tol, "seed": args.seed, "samples": args.samples},
    )
    rng = np.random.default_rng(args.seed)
    fs = potentials.fubini_study_potential()
    gb = potentials.generalized_burns_potential()
    for n in _parse_range(args.dims):
        ts = rng.uniform(0.05, 0.95, args.samples)
        deviation = max(
            abs(curvature.scalar_curvature_reduced(fs, n, float(t)) - n * (n + 1)) for t in ts
        )
        report.check(f"fubini_study_n{n}_S_is_n(n+1)", deviation, 0.0, args.tol)

        ts = rng.uniform(1.5, 8.0, args.samples)
        deviation = max(
            abs(curvature.scalar_curvature_reduced(gb, n, float(t)) * t * t - (n * n - 3 * n + 2))
            for t in ts
        )
        report.check(f"generalized_burns_n{n}_S_t2_value", deviation, 0.0, args.tol)

        if n >= 2:
            bs = scalarflat.burns_simanca_potential(n)
            deviation = max(
                abs(curvature.scalar_curvature_reduced(bs, n, t)) for t in (1.1, 2.0, 10.0)
            )
            report.check(f"burns_simanca_n{n}_scalar_flat", deviation, 0.0, args.tol)
            ok = potentials.admissibility(bs, (1.001, 50.0), 64).passed
            report.check(f"burns_simanca_n{n}_admissible", ok=ok)
    return report


def _cmd_derive(args) -> RunReport:
    report = RunReport("derive", {"polytope": args.polytope, "dim": args.dim, "seed": args.seed})
    if args.polytope != "blowup":
        raise ToricError(f"boundary derivation is defined for the blowup polytope, not {args.polytope!r}")
    n = args.dim
    match = scalarflat.solve_boundary_coefficients(n)
    report.check("A", match.A, Fraction(n - 1), 0, ok=match.A == n - 1)
    report.check("B", match.B, Fraction(2 - n), 0, ok=match.B == 2 - n)
    report.check("division_remainder", match.remainder, Fraction(0), 0, ok=match.remainder == 0)
    descending = list(reversed([_jsonable(c) for c in match.quotient]))
    expected = [1] * (n - 1) + [-(n - 2)]
    report.check("quotient_coefficients", descending, expected, None, ok=descending == expected)
    report.check("Q_at_1", match.quotient_value(1.0), 1.0, 0.0, ok=match.quotient_value(1.0) == 1.0)
    delta = scalarflat.delta_check(match, [1.0, 1.5, 2.0, 5.0, 25.0], seed=args.seed)
    report.check("delta_positive_and_factorizes", delta.max_det_deviation, 0.0, 1e-10, ok=delta.passed)
    return report


def _cmd_curvature(args) -> RunReport:
    report = RunReport(
        "curvature",
        {"potential": args.potential, "dim": args.dim, "t": args.t, "point": args.point},
    )
    pot = potentials.get_potential(args.potential, args.dim)
    if not args.t and not args.point:
        raise ToricError("give at least one --t or --point to evaluate at")
    for t in args.t or []:
        value = curvature.scalar_curvature_reduced(pot, args.dim, t)
        report.check(f"S_reduced(t={t})", value, None, None, ok=math.isfinite(value))
    for point_text in args.point or []:
        x = _parse_floats(point_text)
        if len(x) != args.dim:
            raise ToricError(f"point {point_text!r} does not have dimension {args.dim}")
        t = sum(x)
        radius = min(0.5, 0.6 * (t - pot.domain[0]))
        window = (t - radius, t + radius)
        g = potentials.symplectic_evaluator(pot, t_window=None if pot.value_fn else window)
        value = curvature.scalar_curvature_abreu(g, x)
        report.check(f"S_abreu(x={point_text})", value, None, None, ok=math.isfinite(value))
    return report


def _cmd_legendre(args) -> RunReport:
    report = RunReport(
        "legendre",
        {
            "potential": args.potential,
            "dim": args.dim,
            "samples": args.samples,
            "seed": args.seed,
            "tol_identity": args.tol_identity,
            "tol_hessian": args.tol_hessian,
        },
    )
    maker = {"flat": potentials.flat_radial, "fubini_study": potentials.fubini_study_radial}
    key = args.potential.replace("-", "_")
    if key not in maker:
        raise ToricError(f"legendre roundtrips support flat and fubini_study, not {args.potential!r}")
    profile = maker[key]()
    rng = np.random.default_rng(args.seed)
    worst_gap = 0.0
    worst_hess = 0.0
    worst_grad = 0.0
    for _ in range(args.samples):
        a = rng.uniform(-0.8, 0.8, args.dim)
        result = curvature.legendre_roundtrip(profile, a)
        worst_gap = max(worst_gap, result.duality_gap)
        worst_hess = max(worst_hess, result.hessian_residual)
        worst_grad = max(worst_grad, result.gradient_residual)
    report.check("duality_identity_gap", worst_gap, 0.0, args.tol_identity)
    report.check("hessian_inverse_match", worst_hess, 0.0, args.tol_hessian)
    report.check("moment_map_gradient_match", worst_grad, 0.0, 1e-6)
    return report


def _cmd_decay(args) -> RunReport:
    report = RunReport(
        "decay",
        {"dim": args.dim, "u_min": args.u_min, "u_max": args.u_max, "samples": args.samples},
    )
    scan = asymptotics.decay_scan(args.dim, args.u_min, args.u_max, args.samples)
    report.table = (("u", "deviation"), [(u, d) for u, d in scan.samples])
    report.check("fitted_slope", scan.fitted_slope, scan.expected_slope, args.tol)
    report.note("samples", [[u, d] for u, d in scan.samples])
    return report


def _cmd_admissible(args) -> RunReport:
    report = RunReport(
        "admissible",
        {"potential": args.potential, "dim": args.dim, "t_range": args.t_range, "samples": args.samples},
    )
    pot = potentials.get_potential(args.potential, args.dim)
    lo, hi = _parse_float_range(args.t_range)
    result = potentials.admissibility(pot, (lo, hi), args.samples)
    report.check(
        "admissibility",
        {"min_margin": result.min_margin, "witness": result.witness},
        None,
        None,
        ok=result.passed,
    )
    return report


# ---------------------------------------------------------------------------
# Parser and dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torickahler",
        description="Verify toric Kähler metric identities in action coordinates.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="random seed for sampled checks")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--output", default=None, help="destination path (default: stdout)")

    p = sub.add_parser("verify-catalog", help="constant/zero curvature checks for the catalog")
    p.add_argument("--dims", default="2..4", help="dimension range a..b")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--samples", type=int, default=5, help="random t draws per check")
    common(p)
    p.set_defaults(handler=_cmd_verify_catalog)

    p = sub.add_parser("derive", help="exact boundary matching on the blow-up polytope")
    p.add_argument("--polytope", default="blowup")
    p.add_argument("--dim", type=int, required=True)
    common(p)
    p.set_defaults(handler=_cmd_derive)

    p = sub.add_parser("curvature", help="evaluate scalar curvature at points")
    p.add_argument("--potential", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--t", type=float, action="append", help="evaluate the reduced formula at t (repeatable)")
    p.add_argument("--point", action="append", help="comma-separated action point for the general formula")
    common(p)
    p.set_defaults(handler=_cmd_curvature)

    p = sub.add_parser("legendre", help="roundtrip checks of the Legendre duality")
    p.add_argument("--potential", default="flat")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--tol-identity", type=float, default=1e-8)
    p.add_argument("--tol-hessian", type=float, default=1e-5)
    common(p)
    p.set_defaults(handler=_cmd_legendre)

    p = sub.add_parser("decay", help="asymptotic flatness scan of the blow-up metric")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--u-min", type=float, default=1e2)
    p.add_argument("--u-max", type=float, default=1e6)
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("--tol", type=float, default=0.1, help="allowed slope mismatch")
    common(p)
    p.set_defaults(handler=_cmd_decay)

    p = sub.add_parser("admissible", help="positivity sweep F'' > -1/t")
    p.add_argument("--potential", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--t-range", required=True, help="interval a..b")
    p.add_argument("--samples", type=int, default=200)
    common(p)
    p.set_defaults(handler=_cmd_admissible)

    return parser


def dispatch(argv: Sequence[str]) -> int:
    """Run one subcommand; 0 = all checks pass, 1 = check failure, 2 = usage/domain error."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.handler(args)
        emit(report, args.format, args.output)
    except ToricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if report.overall == "pass" else 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
