"""Command line interface: ``lemnisquircle {constants,eval,verify,sweep,figure}``.

Exit codes: 0 success (all reports pass), 1 a verification failed,
2 usage, domain or numeric error.  A verifier whose residual could not be
evaluated at some grid point counts as a numeric error, not a failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from typing import Callable, Dict, List, Optional, Sequence

from . import curves
from . import lemnifuncs as lf
from .figures import VARIANTS, FigureSpec, figure_svg
from .numerics import NumericsError
from .relations import VERIFIERS, IdentityReport, run_verifier, verify_all

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

SWEEP_HEADER = (
    "alpha", "beta", "r_B", "x_B", "y_B", "x_Bprime", "y_Bprime",
    "r_C", "r_D", "arc_l", "area_a", "residual_thm1",
)

_SQRT2 = math.sqrt(2.0)


def fmt(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return "%.17g" % x


class CliError(Exception):
    pass


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise CliError(f"cannot write {path}: {exc.strerror}") from exc


# --------------------------------------------------------------------------- #
#  constants
# --------------------------------------------------------------------------- #

def constant_table() -> Dict[str, float]:
    k = lf.constants()
    return {
        "varpi": k.varpi,
        "gamma_quarter": k.gamma_quarter,
        "half_varpi": 0.5 * k.varpi,
        "varpi_over_2sqrt2": k.varpi / (2.0 * _SQRT2),
        "squircle_area": k.squircle_area,
    }


def cmd_constants(args, out) -> int:
    table = constant_table()
    if args.format == "json":
        out.write(json.dumps(table, indent=2) + "\n")
    else:
        for key, value in table.items():
            out.write(f"{key} = {fmt(value)}\n")
    return EXIT_OK


# --------------------------------------------------------------------------- #
#  eval
# --------------------------------------------------------------------------- #

EVAL_FUNCTIONS: Dict[str, Callable[[float], float]] = {
    "sl": lf.sl,
    "cl": lf.cl,
    "slh": lf.slh,
    "cos4": lf.cos4,
    "sin4": lf.sin4,
    "tan4": lf.tan4,
    "beta": curves.beta_of_alpha,
    "arc": lambda theta: curves.lemniscate_arc_theta(0.0, theta),
    "area": curves.squircle_sector_area,
}


def cmd_eval(args, out) -> int:
    value = EVAL_FUNCTIONS[args.fn](args.x)
    out.write(fmt(value) + "\n")
    return EXIT_OK


# --------------------------------------------------------------------------- #
#  verify
# --------------------------------------------------------------------------- #

def _parse_offsets(items: Optional[Sequence[str]]) -> Dict[str, float]:
    offsets: Dict[str, float] = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or name not in VERIFIERS:
            raise CliError(f"--perturb expects NAME=VALUE with NAME in {sorted(VERIFIERS)}, got {item!r}")
        offsets[name] = float(value)
    return offsets


def format_reports(reports: List[IdentityReport], form: str) -> str:
    if form == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    if form == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "max_abs_residual", "argmax", "tolerance", "pass", "samples"])
        for r in reports:
            w.writerow([r.name, fmt(r.max_abs_residual), fmt(r.argmax), fmt(r.tolerance),
                        "true" if r.passed else "false", r.samples])
        return buf.getvalue()
    width = max(len(r.name) for r in reports)
    lines = [
        f"{r.name:<{width}}  max_abs_residual={fmt(r.max_abs_residual)}  "
        f"argmax={fmt(r.argmax)}  {'PASS' if r.passed else 'FAIL'}"
        for r in reports
    ]
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} passed at tol={_tol_repr(reports)}")
    return "\n".join(lines) + "\n"


def _tol_repr(reports: List[IdentityReport]) -> str:
    tols = sorted({r.tolerance for r in reports})
    return ",".join("%g" % t for t in tols)


def cmd_verify(args, out) -> int:
    offsets = _parse_offsets(args.perturb)
    if args.which == "all":
        reports = verify_all(args.tol, offsets=offsets, grid_n=args.grid)
    else:
        extra = set(offsets) - {args.which}
        if extra:
            raise CliError(f"--perturb names {sorted(extra)} not selected by 'verify {args.which}'")
        reports = [run_verifier(args.which, args.tol, grid_n=args.grid,
                                offset=offsets.get(args.which, 0.0))]
    out.write(format_reports(reports, args.format))
    broken = [r.name for r in reports if r.failures]
    if broken:
        sys.stderr.write(f"lemnisquircle verify: numeric failure in {', '.join(broken)}\n")
        return EXIT_ERROR
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# --------------------------------------------------------------------------- #
#  sweep
# --------------------------------------------------------------------------- #

def sweep_rows(steps: int) -> List[List[float]]:
    """One row per alpha = k (pi/4) / (steps - 1), in octant quantities."""
    if steps < 2:
        raise CliError("--steps must be at least 2")
    rows = []
    for k in range(steps):
        alpha = curves.QUARTER_PI if k == steps - 1 else k * curves.QUARTER_PI / (steps - 1)
        beta = curves.beta_of_alpha(alpha)
        r_b = curves.lemniscate_r(alpha)
        bp = curves.radial_projection_to_squircle(alpha)
        r_c = curves.lemniscate_r(beta)
        r_d = curves.d_of_b(r_b)
        arc = curves.arc_c_to_p(alpha)
        area = curves.squircle_sector_area(alpha)
        rows.append([
            alpha, beta, r_b, r_b * math.cos(alpha), r_b * math.sin(alpha), bp.x, bp.y,
            r_c, r_d, arc, area, arc - 2.0 * _SQRT2 * area,
        ])
    return rows


def sweep_csv(steps: int) -> str:
    lines = [",".join(SWEEP_HEADER)]
    lines.extend(",".join(fmt(v) for v in row) for row in sweep_rows(steps))
    return "\n".join(lines) + "\n"


def cmd_sweep(args, out) -> int:
    text = sweep_csv(args.steps)
    if args.out in (None, "-"):
        out.write(text)
    else:
        _write_atomic(args.out, text)
    return EXIT_OK


# --------------------------------------------------------------------------- #
#  figure
# --------------------------------------------------------------------------- #

def cmd_figure(args, out) -> int:
    spec = FigureSpec(alpha=args.alpha, variant=args.variant,
                      width_px=args.width, height_px=args.height)
    text = figure_svg(spec)
    if args.out in (None, "-"):
        out.write(text)
    else:
        _write_atomic(args.out, text)
    return EXIT_OK


# --------------------------------------------------------------------------- #
#  entry point
# --------------------------------------------------------------------------- #

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lemnisquircle",
                description="Squircle areas, lemniscate arcs and the functions that link them.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("constants", help="print varpi, Gamma(1/4) and derived constants")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(handler=cmd_constants)

    e = sub.add_parser("eval", help="evaluate one function at one point")
    e.add_argument("fn", choices=sorted(EVAL_FUNCTIONS))
    e.add_argument("x", type=float)
    e.add_argument("--tol", type=float, default=1e-12,
                   help="accepted for symmetry with verify; evaluation always runs at full precision")
    e.set_defaults(handler=cmd_eval)

    v = sub.add_parser("verify", help="check identities over grids")
    v.add_argument("which", choices=sorted(VERIFIERS) + ["all"])
    v.add_argument("--grid", type=int, default=None, help="grid points (default 257 or 128)")
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--format", choices=("text", "json", "csv"), default="text")
    v.add_argument("--perturb", action="append", metavar="NAME=VALUE",
                   help="add VALUE to every residual of verifier NAME (negative control)")
    v.set_defaults(handler=cmd_verify)

    s = sub.add_parser("sweep", help="tabulate the B, B', C, D configuration as CSV")
    s.add_argument("--steps", type=int, default=100)
    s.add_argument("--out", default=None, help="output path (default stdout)")
    s.set_defaults(handler=cmd_sweep)

    f = sub.add_parser("figure", help="draw the configuration as SVG")
    f.add_argument("--alpha", type=float, default=0.5)
    f.add_argument("--variant", choices=VARIANTS, default="fig1")
    f.add_argument("--width", type=int, default=600)
    f.add_argument("--height", type=int, default=600)
    f.add_argument("--out", default=None, help="output path (default stdout)")
    f.set_defaults(handler=cmd_figure)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args, out)
    except (NumericsError, CliError, ValueError) as exc:
        sys.stderr.write(f"lemnisquircle {args.command}: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
