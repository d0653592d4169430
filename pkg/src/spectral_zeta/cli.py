"""Command-line interface: ``spectral-zeta <subcommand> [options]``.

Exit status: 0 success, 1 bad arguments, 2 domain error (pole, divergence,
unsupported manifold), 3 tolerance not met.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import potential as pot
from .coefficients import a_coeffs, b_coeffs
from .errors import DomainError, NonConstantRemainder, ToleranceNotMet
from .manifolds import (
    DEFAULT_POLE_DEPTH,
    ManifoldSpec,
    determinant,
    parse_manifold,
    poles,
    zeta,
    zeta_at_neg_int,
    zeta_at_zero,
    zeta_prime_at_zero,
)

ENV_TOLERANCE = "SPECTRAL_ZETA_TOL"
DEFAULT_TOLERANCE = 1e-10
TOL_MIN, TOL_MAX = 1e-14, 1e-2

TABLE_MANIFOLDS = ("S2", "RP2", "S3", "RP3", "S4", "RP4", "CP2", "S1", "RP1", "CP1")

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_TOLERANCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt_float(x: float) -> str:
    return format(float(x), ".12g")


def fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _tolerance(text: str) -> float:
    try:
        tol = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tolerance {text!r}") from None
    if not TOL_MIN < tol < TOL_MAX:
        raise argparse.ArgumentTypeError(f"tolerance must lie in ({TOL_MIN:g}, {TOL_MAX:g}), got {text}")
    return tol


def _manifold(text: str) -> ManifoldSpec:
    try:
        return parse_manifold(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tolerance", type=_tolerance, default=None,
                        help=f"absolute tolerance (default {DEFAULT_TOLERANCE:g}, or ${ENV_TOLERANCE})")
    common.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    parser = _Parser(prog="spectral-zeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", parents=[common], help="u-basis coefficient table of a manifold")
    p.add_argument("--manifold", type=_manifold, required=True)

    p = sub.add_parser("poles", parents=[common], help="poles and exact residues")
    p.add_argument("--manifold", type=_manifold, required=True)
    p.add_argument("--depth", type=int, default=DEFAULT_POLE_DEPTH,
                   help="rungs of the half-integer ladder for odd dimensions")

    p = sub.add_parser("zeta", parents=[common], help="zeta(s, M) at a real point")
    p.add_argument("--manifold", type=_manifold, required=True)
    p.add_argument("--s", type=float, required=True)

    sub.add_parser("table", parents=[common], help="zeta(0) and zeta'(0) for the low-dimensional cases")

    p = sub.add_parser("det", parents=[common], help="regularised determinant exp(-zeta'(0))")
    p.add_argument("--manifold", type=_manifold, required=True)

    p = sub.add_parser("potential", parents=[common], help="G(q) and zeta'(0, Delta + q^2) on S^2")
    p.add_argument("--q-max", type=float, default=pot.DEFAULT_Q_MAX)
    p.add_argument("--samples", type=int, default=pot.DEFAULT_SAMPLES)
    p.add_argument("--product-terms", type=int, default=1000)
    return parser


def resolve_tolerance(arg: Optional[float]) -> float:
    if arg is not None:
        return arg
    env = os.environ.get(ENV_TOLERANCE)
    if env:
        try:
            return _tolerance(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{ENV_TOLERANCE}: {exc}") from None
    return DEFAULT_TOLERANCE


# --------------------------------------------------------------------------
# Reports (plain dicts with a fixed key order)


def coeffs_report(m: ManifoldSpec) -> dict:
    table = a_coeffs(m.k) if m.family == "complex-projective" else b_coeffs(m.k)
    return {"manifold": m.name, **table.to_json()}


def poles_report(m: ManifoldSpec, depth: int = DEFAULT_POLE_DEPTH) -> dict:
    return {
        "manifold": m.name,
        "poles": [{"s": fmt_rational(p.location), "residue": fmt_rational(p.residue)} for p in poles(m, depth)],
    }


def zeta_report(m: ManifoldSpec, s: float, tolerance: float) -> dict:
    if s <= 0 and float(s).is_integer():
        return {"value": fmt_rational(zeta_at_neg_int(m, int(-s))), "exact": True}
    res = zeta(m, s, tolerance)
    return {"value": fmt_float(res.value), "error": fmt_float(res.error_estimate), "exact": False}


def table_row(m: ManifoldSpec, tolerance: float) -> dict:
    zp = zeta_prime_at_zero(m, tolerance)
    return {
        "manifold": m.name,
        "zeta0": fmt_rational(zeta_at_zero(m)),
        "zeta_prime0": fmt_float(zp.value),
        "error": fmt_float(zp.error_estimate),
    }


def table_report(tolerance: float) -> dict:
    return {"rows": [table_row(parse_manifold(name), tolerance) for name in TABLE_MANIFOLDS]}


def table_from_json(data: dict) -> List[dict]:
    """Parse a ``table`` report back into exact / float values."""
    return [
        {
            "manifold": parse_manifold(row["manifold"]),
            "zeta0": Fraction(row["zeta0"]),
            "zeta_prime0": float(row["zeta_prime0"]),
            "error": float(row["error"]),
        }
        for row in data["rows"]
    ]


def det_report(m: ManifoldSpec, tolerance: float) -> dict:
    zp = zeta_prime_at_zero(m, tolerance)
    det = determinant(m, tolerance)
    return {
        "manifold": m.name,
        "zeta_prime0": fmt_float(zp.value),
        "log_det": fmt_float(-zp.value),
        "det": fmt_float(det.value),
        "error": fmt_float(det.error_estimate),
    }


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def render(command: str, report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if command == "potential":
        return report
    if command == "coeffs":
        return _csv_text(("l", "value"), [(str(i), v) for i, v in enumerate(report["values"])])
    if command == "poles":
        return _csv_text(("s", "residue"), [(p["s"], p["residue"]) for p in report["poles"]])
    if command == "table":
        keys = ("manifold", "zeta0", "zeta_prime0", "error")
        return _csv_text(keys, [[row[k] for k in keys] for row in report["rows"]])
    keys = list(report)
    return _csv_text(keys, [[str(report[k]).lower() if isinstance(report[k], bool) else report[k] for k in keys]])


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        tol = resolve_tolerance(args.tolerance)
    except UsageError as exc:
        print(f"spectral-zeta: error: {exc}", file=stderr)
        return EXIT_USAGE

    fmt = args.format or ("csv" if args.command == "potential" else "json")
    try:
        if args.command == "coeffs":
            report = coeffs_report(args.manifold)
        elif args.command == "poles":
            if args.depth < 0:
                raise DomainError("--depth must be >= 0")
            report = poles_report(args.manifold, args.depth)
        elif args.command == "zeta":
            report = zeta_report(args.manifold, args.s, tol)
        elif args.command == "table":
            report = table_report(tol)
        elif args.command == "det":
            report = det_report(args.manifold, tol)
        else:
            rows = pot.potential_rows(pot.sample_points(args.q_max, args.samples), args.product_terms, tol)
            report = pot.rows_to_csv(rows) if fmt == "csv" else {
                "rows": [{k: fmt_float(r[k]) for k in pot.CSV_HEADER} for r in rows]
            }
    except (DomainError, NonConstantRemainder) as exc:
        print(f"spectral-zeta: {exc}", file=stderr)
        return EXIT_DOMAIN
    except ToleranceNotMet as exc:
        print(f"spectral-zeta: tolerance not met: {exc}", file=stderr)
        return EXIT_TOLERANCE

    text = render(args.command, report, fmt)
    if args.output == "-":
        stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
