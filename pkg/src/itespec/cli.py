"""Command-line front end.

Subcommands: ``ite1d``, ``complex1d``, ``itend``, ``weyl`` and ``scatter``.
Results go to ``--out`` (or stdout) as CSV or JSON; floats are written in
shortest round-trip form so identical runs give identical bytes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from . import ite_1d, ite_1d_complex, ite_nd, scattering
from .errors import ITEError, NumericalError
from .records import Contrast, Mode

EIGEN_COLUMNS = ["lambda", "l", "nu", "alg_mult", "geom_mult", "kind"]
COUNT_COLUMNS = ["r", "count", "dirichlet_diff", "weyl_pred", "residual_scaled"]
COMPLEX_COLUMNS = ["re", "im", "mult"]
SCATTER_COLUMNS = ["lambda", "l", "origin", "abs_amplitude", "status"]


class UsageError(Exception):
    pass


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    speed = common.add_mutually_exclusive_group(required=True)
    speed.add_argument("--gamma", type=float, help="wave-speed contrast gamma")
    speed.add_argument("--m", type=float, help="refraction index (gamma = sqrt(m))")
    speed.add_argument("--gamma-rational", metavar="P/Q", help="exact rational gamma")
    common.add_argument("--n", type=int, default=None, help="dimension; 1 selects the half-line model")
    common.add_argument("--rmax", type=float, required=True, help="largest radius / frequency")
    common.add_argument("--grid", help="comma-separated radii for count reports")
    common.add_argument("--mode", default="geometric",
                        choices=["geom", "geometric", "alg", "algebraic"])
    common.add_argument("--format", default="csv", choices=["csv", "json"])
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--tol", type=float, help="override the common-zero tolerance")
    common.add_argument("--threads", type=int, default=None, help="worker threads for per-momentum work")
    return common


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="itespec", description="Interior transmission eigenvalues of the unit ball.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ite1d", parents=[common], help="real eigenvalues of the half-line model")
    sub.add_parser("complex1d", parents=[common], help="complex eigenvalues of the half-line model")
    sub.add_parser("itend", parents=[common], help="real eigenvalues of the n-ball")
    sub.add_parser("weyl", parents=[common], help="counting function against the Weyl law")
    sub.add_parser("scatter", parents=[common], help="eigenvalues versus scattering-amplitude zeros")
    return parser


def _contrast(args):
    if args.gamma_rational is not None:
        return Contrast.parse_ratio(args.gamma_rational)
    if args.m is not None:
        return Contrast.from_index(args.m)
    return Contrast(args.gamma)


def _dimension(args):
    default = 1 if args.command in ("ite1d", "complex1d") else None
    n = args.n if args.n is not None else default
    if n is None:
        raise UsageError(f"{args.command} needs --n")
    if args.command in ("ite1d", "complex1d") and n != 1:
        raise UsageError(f"{args.command} is the half-line model; use --n 1")
    if args.command in ("itend", "scatter") and n < 2:
        raise UsageError(f"{args.command} needs --n >= 2")
    if n < 1:
        raise UsageError("--n must be positive")
    return n


def _grid(args):
    if args.grid is None:
        return np.linspace(args.rmax / 20, args.rmax, 20)
    try:
        values = np.array([float(v) for v in args.grid.split(",") if v.strip()])
    except ValueError:
        raise UsageError(f"cannot parse --grid {args.grid!r}") from None
    if values.size == 0 or np.any(values <= 0) or np.any(np.diff(values) <= 0):
        raise UsageError("--grid must be positive and strictly increasing")
    if values[-1] > args.rmax:
        raise UsageError("--grid exceeds --rmax")
    return values


def _eigen_rows(ites):
    for e in ites:
        yield {"lambda": e.lam, "l": e.l, "nu": e.nu, "alg_mult": e.alg_mult,
               "geom_mult": e.geom_mult, "kind": e.kind.value}


def _one_d_report(contrast, radii, mode, tol):
    ites = ite_1d.enumerate_real_ites_1d(contrast, float(radii[-1]), tol=tol)
    coef = ite_1d.weyl_coefficient_1d(contrast, mode)
    rows = []
    for r in radii:
        count = ite_1d.count_from_list(ites, r, mode)
        diff = abs(math.floor(r / math.pi) - math.floor(contrast.gamma * r / math.pi))
        pred = coef * r / math.pi
        rows.append({"r": float(r), "count": count, "dirichlet_diff": diff,
                     "weyl_pred": pred, "residual_scaled": abs(count - pred)})
    return rows, {"weyl_coefficient": coef / math.pi}


def run(args):
    """Execute a parsed command; returns ``(columns, rows, meta, failure)``."""
    contrast = _contrast(args)
    n = _dimension(args)
    mode = Mode.parse(args.mode)
    if args.rmax <= 0 or not math.isfinite(args.rmax):
        raise UsageError("--rmax must be positive")
    if args.tol is not None and not args.tol > 0:
        raise UsageError("--tol must be positive")
    common_tol = args.tol if args.tol is not None else (
        ite_1d.COMMON_TOL if n == 1 else ite_nd.COMMON_TOL)
    meta = {
        "command": args.command,
        "gamma": contrast.gamma,
        "rational": None if contrast.rational is None else "%d/%d" % contrast.rational,
        "n": n,
        "mode": mode.value,
        "rmax": args.rmax,
        "tolerances": {"common_zero": common_tol},
        "version": __version__,
    }
    failure = None
    cmd = args.command
    if cmd == "ite1d":
        ites = ite_1d.enumerate_real_ites_1d(contrast, args.rmax, tol=common_tol)
        return EIGEN_COLUMNS, list(_eigen_rows(ites)), meta, None
    if cmd == "complex1d":
        meta["strip_bound"] = ite_1d_complex.strip_bound(contrast.gamma)
        zeros = ite_1d_complex.enumerate_complex_ites(contrast.gamma, args.rmax)
        if args.grid is not None:
            radii = _grid(args)
            rows = [{"r": float(r), "count": ite_1d_complex.total_multiplicity(zeros, r),
                     "dirichlet_diff": None, "weyl_pred": (1 + contrast.gamma) * r / math.pi,
                     "residual_scaled": abs(ite_1d_complex.total_multiplicity(zeros, r)
                                            - (1 + contrast.gamma) * r / math.pi) / r}
                    for r in radii]
            return COUNT_COLUMNS, rows, meta, None
        rows = [{"re": e.z.real, "im": e.z.imag, "mult": e.mult} for e in zeros]
        return COMPLEX_COLUMNS, rows, meta, None
    if cmd == "weyl" and n == 1:
        rows, extra = _one_d_report(contrast, _grid(args), mode, common_tol)
        meta.update(extra)
        return COUNT_COLUMNS, rows, meta, None

    cfg = ite_nd.DimensionConfig(n, contrast.gamma**2)
    meta["m"] = cfg.m
    if cmd == "itend":
        ites = ite_nd.all_ites(cfg, args.rmax, threads=args.threads, tol=common_tol)
        return EIGEN_COLUMNS, list(_eigen_rows(ites)), meta, None
    if cmd == "weyl":
        report = ite_nd.weyl_report(cfg, _grid(args), threads=args.threads, tol=common_tol)
        meta["weyl_coefficient"] = report.meta["weyl_coefficient"]
        meta["fit_coefficient"] = report.fit_coefficient
        return COUNT_COLUMNS, list(report.rows()), meta, None
    report = scattering.verify_ite_te_coincidence(cfg, args.rmax, threads=args.threads)
    meta.update(checked=report.checked, amplitude_zeros=report.amplitude_zeros,
                max_amplitude=report.max_amplitude, mismatches=len(report.mismatches))
    rows = [{"lambda": lam, "l": l, "origin": origin, "abs_amplitude": a, "status": status}
            for l, lam, origin, a, status in report.items]
    if not report.ok:
        failure = f"{len(report.mismatches)} eigenvalue/amplitude-zero mismatches"
    return SCATTER_COLUMNS, rows, meta, failure


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render(columns, rows, meta, fmt):
    if fmt == "json":
        return json.dumps({"meta": meta, "rows": rows}, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(_plain(row[c])) for c in columns])
    return buf.getvalue()


def _plain(value):
    if isinstance(value, np.generic):
        return value.item()
    return value


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return _plain(obj)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        columns, rows, meta, failure = run(args)
    except UsageError as exc:
        parser.error(str(exc))
    except NumericalError as exc:
        print(f"itespec: numerical failure: {exc}", file=sys.stderr)
        return 1
    except ITEError as exc:
        parser.error(str(exc))
    text = render(columns, _jsonable(rows), _jsonable(meta), args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if failure:
        print(f"itespec: {failure}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
