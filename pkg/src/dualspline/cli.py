"""Command-line front end.

Exit codes: 0 success, 1 file or parse error, 2 invalid input, 3 numerical
failure (conditioning guard or a failed self-check).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .approx import (
    GRID_SIZE,
    reduce_and_remove,
    to_truncated_power,
    truncated_power_eval_curve,
)
from .document import CurveDocument, DocumentError, read_document, write_document
from .dual_bspline import build_dual, duality_residual
from .exceptions import ConditioningError
from .pear import PEAR_EXPERIMENTS, agrees_to_3_digits, pear_curve, pear_knots
from .spline_core import KnotVector, SplineCurve, curve_eval, random_knot_vector
from .svg import write_comparison_svg

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3

#: Largest acceptable ``max |Dmat G - I|`` for ``check``.
CHECK_TOLERANCE = 1e-8
#: Largest acceptable grid error for ``convert-power --verify``.
VERIFY_TOLERANCE = 1e-8
#: Errors below this print as zero.
REPORT_FLOOR = 1e-12
#: Two knot positions closer than this are the same knot.
KNOT_MATCH_TOL = 1e-12


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def format_sci3(x: float) -> str:
    """``2.76e-3`` style: 3 significant digits, exponent without padding."""
    if x == 0 or not math.isfinite(x):
        return "0.00e0" if x == 0 else repr(x)
    mant, exp = f"{x:.2e}".split("e")
    return f"{mant}e{int(exp)}"


def _report_value(x: float) -> str:
    return format_sci3(0.0 if abs(x) < REPORT_FLOOR else x)


def parse_knot_list(text: str) -> list[float]:
    """Comma-separated decimals or fractions; the empty string is an empty list."""
    items = [s.strip() for s in text.split(",") if s.strip()]
    try:
        return [float(Fraction(s)) for s in items]
    except (ValueError, ZeroDivisionError):
        raise CliError(EXIT_INVALID, f"cannot parse knot list {text!r}") from None


def _take(flat: list[float], pos: float) -> int:
    for k, t in enumerate(flat):
        if abs(t - pos) <= KNOT_MATCH_TOL:
            return k
    raise ValueError(f"knot {pos!r} is not an interior knot of the input curve")


def select_knots(kv: KnotVector, keep=None, drop=None) -> KnotVector:
    """Sub-knot vector of ``kv``. Each listed position stands for one occurrence."""
    source = [float(t) for t in kv.interior_flat]
    if keep is not None:
        pool, chosen = list(source), []
        for pos in keep:
            chosen.append(pool.pop(_take(pool, pos)))
        flat = sorted(chosen)
    else:
        flat = list(source)
        for pos in drop or ():
            flat.pop(_take(flat, pos))
    return KnotVector.from_knots(kv.degree, flat)


def _load_curve(path) -> tuple[CurveDocument, SplineCurve]:
    doc = read_document(path)
    return doc, doc.to_curve()


def _approximate(args, curve, doc, degree, keep_kv):
    result, report = reduce_and_remove(curve, degree, keep_kv)
    name = f"{doc.name or 'curve'}-approx"
    write_document(CurveDocument.from_curve(result, name=name), args.out)
    if args.svg:
        write_comparison_svg(args.svg, curve, result, show_polygon=args.polygon)
    print(f"E2 = {_report_value(report.e2)}")
    print(f"Einf = {_report_value(report.einf)}")
    print(f"dim {report.source_dim} -> {report.target_dim}, {report.elapsed:.3f} s")
    return EXIT_OK


def cmd_reduce(args) -> int:
    doc, curve = _load_curve(args.input)
    if args.keep_knots is not None and args.drop_knots is not None:
        raise CliError(EXIT_INVALID, "--keep-knots and --drop-knots are mutually exclusive")
    keep = parse_knot_list(args.keep_knots) if args.keep_knots is not None else None
    drop = parse_knot_list(args.drop_knots) if args.drop_knots is not None else None
    target = select_knots(curve.kv, keep=keep, drop=drop)
    return _approximate(args, curve, doc, args.degree, target)


def cmd_remove_knots(args) -> int:
    doc, curve = _load_curve(args.input)
    target = select_knots(curve.kv, drop=parse_knot_list(args.drop_knots))
    return _approximate(args, curve, doc, curve.degree, target)


def cmd_check(args) -> int:
    if args.random is not None:
        n, m, seed = args.random
        if n < 0 or m < 0:
            raise CliError(EXIT_INVALID, "--random expects non-negative N and M")
        kv = random_knot_vector(n, m, np.random.default_rng(seed))
    elif args.input is not None:
        kv = _load_curve(args.input)[1].kv
    else:
        raise CliError(EXIT_INVALID, "check needs an input file or --random N M SEED")
    residual = duality_residual(build_dual(kv))
    print(f"degree {kv.degree}, {kv.m} interior knots, dimension {kv.dim}")
    print(f"max |D G - I| = {format_sci3(residual)}")
    if not residual <= CHECK_TOLERANCE:
        raise CliError(EXIT_NUMERIC, f"duality residual {residual:.3e} exceeds {CHECK_TOLERANCE:g}")
    return EXIT_OK


def cmd_convert_power(args) -> int:
    doc, curve = _load_curve(args.input)
    coeffs = to_truncated_power(curve)
    knots = [p for p, _ in curve.kv.interior]
    n = curve.degree
    labels = [f"t^{j}" for j in range(n + 1)] + [f"(t-{t!r})_+^{n}" for t in knots]
    out = {
        "name": doc.name,
        "degree": n,
        "knots": [repr(t) for t in knots],
        "basis": labels,
        "coefficients": coeffs.tolist(),
    }
    Path(args.out).write_text(json.dumps(out, indent=2) + "\n")
    if args.verify:
        grid = np.linspace(0.0, 1.0, GRID_SIZE + 1)
        err = np.max(np.abs(truncated_power_eval_curve(coeffs, n, knots, grid) - curve_eval(curve, grid)))
        print(f"max round-trip error = {format_sci3(float(err))}")
        if not err <= VERIFY_TOLERANCE:
            raise CliError(EXIT_NUMERIC, f"round-trip error {err:.3e} exceeds {VERIFY_TOLERANCE:g}")
    return EXIT_OK


def cmd_pear_demo(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    curve = pear_curve()
    write_document(CurveDocument.from_curve(curve, name="pear"), outdir / "pear.json")
    rows, all_ok = [], True
    for name, (degree, drop, (ref_e2, ref_einf)) in PEAR_EXPERIMENTS.items():
        result, report = reduce_and_remove(curve, degree, pear_knots(degree, drop))
        write_document(CurveDocument.from_curve(result, name=f"pear-{name}"), outdir / f"{name}.json")
        write_comparison_svg(outdir / f"{name}.svg", curve, result, show_polygon=args.polygon)
        ok = agrees_to_3_digits(report.e2, ref_e2) and agrees_to_3_digits(report.einf, ref_einf)
        all_ok &= ok
        rows.append((name, report, ref_e2, ref_einf, ok))
    header = f"{'experiment':<16} {'E2':>9} {'ref':>9} {'Einf':>9} {'ref':>9}  match"
    lines = [header]
    for name, rep, ref_e2, ref_einf, ok in rows:
        lines.append(
            f"{name:<16} {format_sci3(rep.e2):>9} {format_sci3(ref_e2):>9} "
            f"{format_sci3(rep.einf):>9} {format_sci3(ref_einf):>9}  {'yes' if ok else 'NO'}"
        )
    table = "\n".join(lines) + "\n"
    (outdir / "summary.txt").write_text(table)
    print(table, end="")
    if not all_ok:
        raise CliError(EXIT_NUMERIC, "some experiments do not match the reference values")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualspline",
        description="L2-optimal degree reduction and knot removal of B-spline curves.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def outputs(p):
        p.add_argument("--out", required=True, help="output curve document")
        p.add_argument("--svg", help="write an SVG overlay of input and result")
        p.add_argument("--polygon", action="store_true", help="draw control polygons in the SVG")

    p = sub.add_parser("reduce", help="degree reduction, optionally with knot removal")
    p.add_argument("input")
    p.add_argument("--degree", type=int, required=True, help="target degree")
    p.add_argument("--keep-knots", help="comma-separated interior knots to keep")
    p.add_argument("--drop-knots", help="comma-separated interior knots to remove")
    outputs(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("remove-knots", help="knot removal at the same degree")
    p.add_argument("input")
    p.add_argument("--drop-knots", required=True, help="comma-separated interior knots to remove")
    outputs(p)
    p.set_defaults(func=cmd_remove_knots)

    p = sub.add_parser("check", help="build the dual basis and report max |D G - I|")
    p.add_argument("input", nargs="?")
    p.add_argument("--random", nargs=3, type=int, metavar=("N", "M", "SEED"),
                   help="random knot vector of degree N with M interior knots")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("convert-power", help="coefficients in the truncated power basis")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--verify", action="store_true", help="compare both forms on a grid")
    p.set_defaults(func=cmd_convert_power)

    p = sub.add_parser("pear-demo", help="run the four Pear experiments")
    p.add_argument("--outdir", required=True)
    p.add_argument("--polygon", action="store_true")
    p.set_defaults(func=cmd_pear_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        msg, code = str(exc), exc.code
    except (DocumentError, OSError) as exc:
        msg, code = str(exc), EXIT_IO
    except ConditioningError as exc:
        msg, code = f"conditioning failure: {exc}", EXIT_NUMERIC
    except (ValueError, IndexError) as exc:
        msg, code = str(exc), EXIT_INVALID
    print(f"dualspline: error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
