"""Command-line front end: ml / solution / verify / front.

Data goes to stdout, diagnostics to stderr. Output is deterministic:
identical invocations produce byte-identical bytes (floats are printed in
shortest round-trip form). CSV starts with a frozen header line; JSON wraps
the same rows as {"schema_version", "command", "inputs", "rows"}.

Exit codes: 0 success, 1 domain/verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from . import bounds as bd
from . import fundamental_solution as fs
from . import special_functions as sf
from .errors import DomainError
from .verify import run_suite

SCHEMA_VERSION = "1"


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    if v is None:
        return ""
    # CSV rows are split on bare commas; keep free-text fields comma-free
    return str(v).replace(",", ";")


def _emit(command: str, inputs: dict, header: list[str], rows: list[dict],
          fmt: str, out_path: str | None) -> None:
    if fmt == "csv":
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(row.get(col)) for col in header))
        payload = "\n".join(lines) + "\n"
    else:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "inputs": {k: _fmt(v) for k, v in inputs.items()},
            "rows": [{col: _fmt(row.get(col)) for col in header}
                     for row in rows],
        }
        payload = json.dumps(doc, indent=2) + "\n"
    sys.stdout.write(payload)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)


def _default_tol() -> float:
    raw = os.environ.get("MLFRAC_DEFAULT_TOL", "")
    try:
        return float(raw) if raw else fs.DEFAULT_TOL
    except ValueError:
        return fs.DEFAULT_TOL


def _parse_grid(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


# --------------------------------------------------------------------------


def cmd_ml(args) -> int:
    if args.r is not None:
        r_values = [args.r]
    else:
        if args.r_min is None or args.r_max is None:
            print("ml: provide --r or --r-min/--r-max/--r-steps",
                  file=sys.stderr)
            return 2
        r_values = np.linspace(args.r_min, args.r_max, args.r_steps).tolist()
    header = ["alpha", "r", "value", "log_value", "method", "err_estimate"]
    if args.log:
        header.append("log_e")
    rows = []
    for r in r_values:
        e = sf.ml_e(args.alpha, r)
        row = {
            "alpha": args.alpha,
            "r": r,
            "value": e.value,
            "log_value": e.log_value,
            "method": e.method,
            "err_estimate": e.err_estimate,
        }
        if args.log:
            row["log_e"] = sf.ml_log_e(args.alpha, r) if r > 0 else None
        rows.append(row)
    _emit("ml", {"alpha": args.alpha}, header, rows, args.format, args.out)
    return 0


def cmd_solution(args) -> int:
    xs = _parse_grid(args.x)
    ts = _parse_grid(args.t)
    tol = args.tol if args.tol is not None else _default_tol()
    for t in ts:
        if t <= 0:
            print("solution: initial datum is a Dirac delta; choose t > 0",
                  file=sys.stderr)
            return 1
    params = fs.FracParams(args.alpha, args.d, args.a)
    header = ["alpha", "a", "d", "x", "t", "u", "log_u", "method",
              "abs_error_bound"]
    rows = []
    for x in xs:
        for t in ts:
            sol = _solve_one(params, x, t, args.method, tol)
            rows.append({
                "alpha": args.alpha, "a": args.a, "d": args.d,
                "x": x, "t": t, "u": sol.u, "log_u": sol.log_u,
                "method": sol.method, "abs_error_bound": sol.abs_error_bound,
            })
    _emit("solution",
          {"alpha": args.alpha, "a": args.a, "d": args.d,
           "method": args.method, "tol": tol},
          header, rows, args.format, args.out)
    return 0


def _solve_one(params: fs.FracParams, x: float, t: float, method: str,
               tol: float) -> fs.SolutionValue:
    if method == "quadrature":
        return fs.u_quadrature(x, t, params, tol)
    if params.a == 0:
        # the normalized series frame needs a > 0; quadrature covers a = 0
        if method == "series":
            print("solution: series route needs a > 0; using quadrature",
                  file=sys.stderr)
        return fs.u_quadrature(x, t, params, tol)
    scale = math.sqrt(params.a / params.d)
    xn, tn = fs.rescale(params, abs(x), t)
    sol = fs.u_series(xn, tn, params.alpha, tol / max(scale, 1.0))
    log_u = None if sol.log_u is None else sol.log_u + math.log(scale)
    return fs.SolutionValue(sol.u * scale, log_u, sol.method,
                            sol.abs_error_bound * scale)


def cmd_verify(args) -> int:
    rows_raw = run_suite(args.suite)
    header = ["suite", "check", "detail", "value", "threshold", "satisfied",
              "informational"]
    rows = [{
        "suite": r.suite, "check": r.check, "detail": r.detail,
        "value": r.value, "threshold": r.threshold,
        "satisfied": r.satisfied, "informational": r.informational,
    } for r in rows_raw]
    _emit("verify", {"suite": args.suite}, header, rows, args.format,
          args.out)
    failures = [r for r in rows_raw if not r.satisfied and not r.informational]
    total = len(rows_raw)
    print(f"verify {args.suite}: {total - len(failures)}/{total} checks "
          f"satisfied", file=sys.stderr)
    return 1 if failures else 0


def cmd_front(args) -> int:
    if not 0.0 < args.beta < 0.5:
        print("front: divergence is certified for beta in (0, 1/2) only",
              file=sys.stderr)
        return 1
    t_grid = tuple(np.geomspace(args.t_min, args.t_max, args.t_steps))
    try:
        cfg = bd.FrontConfig(args.beta, args.c, args.alpha, t_grid=t_grid)
        samples = bd.front_track(cfg)
    except DomainError as exc:
        print(f"front: {exc}", file=sys.stderr)
        return 1
    header = ["t", "x", "log_u", "log_lower_bound", "bracket_ok"]
    rows = [{
        "t": s.t, "x": s.x, "log_u": s.log_u,
        "log_lower_bound": s.log_lower_bound, "bracket_ok": s.bracket_ok,
    } for s in samples]
    _emit("front",
          {"alpha": args.alpha, "beta": args.beta, "c": args.c,
           "t_min": args.t_min, "t_max": args.t_max,
           "t_steps": args.t_steps},
          header, rows, args.format, args.out)
    tail = [s for s in samples if s.t >= 5.0] or samples
    increasing = all(b.log_u > a.log_u for a, b in zip(tail, tail[1:]))
    sandwich = all(s.bracket_ok for s in samples)
    if not increasing:
        print("front: log u is not strictly increasing on the tail",
              file=sys.stderr)
    if not sandwich:
        print("front: a lower bound exceeded log u", file=sys.stderr)
    return 0 if increasing and sandwich else 1


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlfrac",
        description="Mittag-Leffler evaluation, Caputo checks, and the "
                    "time-fractional reaction-diffusion fundamental solution",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ml", help="evaluate the Mittag-Leffler function")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--r", type=float)
    p.add_argument("--r-min", type=float)
    p.add_argument("--r-max", type=float)
    p.add_argument("--r-steps", type=int, default=11)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--log", action="store_true",
                   help="append log E (r > 0) as an extra column")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_ml)

    p = sub.add_parser("solution", help="evaluate the fundamental solution")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--d", type=float, default=1.0)
    p.add_argument("--x", required=True, help="value or comma-separated grid")
    p.add_argument("--t", required=True, help="value or comma-separated grid")
    p.add_argument("--method", choices=("series", "quadrature", "auto"),
                   default="auto")
    p.add_argument("--tol", type=float)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_solution)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite",
                   choices=("ml", "caputo", "solution", "bounds", "all"),
                   default="all")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("front", help="track u along x = c t^beta")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--t-steps", type=int, default=8)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_front)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as exc:
        print(f"mlfrac: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
