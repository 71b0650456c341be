"""Command-line front end.

Usage:
    turan compute --p 2 --q 5 --method all
    turan table --family two_over_q --max-q 15 --format csv
    turan verify --max-q 12
    turan emit-function --p 3 --q 8 --samples 17
    turan fourier --p 2 --q 5 --terms 50

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 method unavailable.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .closed_forms import dispatch_closed_form
from .errors import InvalidInstance, TuranError
from .extremal import ExtremalFunction, fourier_spectrum, phi_eval, tail_bound
from .problems import DEFAULT_TOL, ProblemInstance, coprime_instances, make_instance
from .routes import compute_routes
from .verify import format_report, run_checks

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_UNAVAILABLE = 0, 1, 2, 3
MAX_TABLE_Q = 1000
# dense simplex cost grows like q^3 per pivot batch; beyond this only closed forms are tabulated
DEFAULT_LP_MAX_Q = 200
FAMILIES = ("two_over_q", "three_over_q", "p_over_2p1", "all_small")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = DEFAULT_TOL
    output_format: str = "json"
    output_path: Optional[str] = None
    fourier_terms: Optional[int] = None

    def __post_init__(self):
        if not 0 < self.tolerance <= 1e-3:
            raise CliError(f"--tol must lie in (0, 1e-3], got {self.tolerance}", EXIT_INVALID)


def fmt_float(x: float) -> str:
    """17 significant digits, always recognisable as a float."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj) -> str:
    """Compact JSON with insertion-ordered keys and 17-digit floats.

    Non-finite floats become null so the output stays valid JSON.
    """
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj)) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return fmt_float(float(v))
    if isinstance(v, (list, tuple, np.ndarray)):
        return " ".join(_csv_cell(x) for x in v)
    return str(v)


def to_csv(header: list[str], rows: list[list], footer: Optional[list[str]] = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    for line in footer or []:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def _instance(p: int, q: int) -> ProblemInstance:
    try:
        return make_instance(p, q)
    except InvalidInstance as exc:
        raise CliError(f"invalid instance: {exc}", EXIT_INVALID) from exc


def compute_record(p: int, q: int, method: str, tol: float = DEFAULT_TOL) -> dict:
    inst = _instance(p, q)
    r = compute_routes(inst, tol)
    if method == "closed":
        if not r.closed:
            raise CliError(f"no closed form covers p={p}, q={q}", EXIT_UNAVAILABLE)
        value, breakpoints = r.closed[0].value, r.closed[0].breakpoints
    elif method == "lp1":
        value, breakpoints = r.lp1.value, r.lp1_breakpoints(tol)
    elif method == "lp2":
        value, breakpoints = r.lp2.value, r.lp2_breakpoints
    elif method == "all":
        value, breakpoints = r.best_value, r.best_breakpoints
    else:
        raise CliError(f"unknown method {method!r}", EXIT_INVALID)
    record = {
        "p": p,
        "q": q,
        "h": p / q,
        "method": method,
        "value": value,
        "breakpoints": [float(b) for b in breakpoints],
        "residuals": {"lp1_vs_lp2": r.lp1_vs_lp2, "lp_vs_closed": r.lp_vs_closed},
    }
    if method == "all":
        record["routes"] = r.values()
        record["max_pairwise_delta"] = r.max_pairwise_delta
    return record


def family_instances(family: str, max_q: int) -> list[ProblemInstance]:
    if family == "two_over_q":
        return [ProblemInstance(2, q) for q in range(5, max_q + 1, 2)]
    if family == "three_over_q":
        return [ProblemInstance(3, q) for q in range(7, max_q + 1) if q % 3]
    if family == "p_over_2p1":
        return [ProblemInstance(p, 2 * p + 1) for p in range(1, (max_q - 1) // 2 + 1)]
    if family == "all_small":
        return sorted(coprime_instances(max_q), key=lambda i: (i.p, i.q))
    raise CliError(f"unknown family {family!r}", EXIT_INVALID)


TABLE_HEADER = ["p", "q", "h", "A_closed", "A_lp1", "A_lp2", "delta_lp1_lp2", "delta_lp_closed",
                "excess_over_h3"]


def table_rows(family: str, max_q: int, tol: float = DEFAULT_TOL,
               lp_max_q: int = DEFAULT_LP_MAX_Q) -> list[list]:
    """Rows of TABLE_HEADER; LP columns stay empty for q > lp_max_q."""
    if max_q > MAX_TABLE_Q:
        raise CliError(f"--max-q must be <= {MAX_TABLE_Q}", EXIT_INVALID)
    rows = []
    for inst in family_instances(family, max_q):
        h = inst.p / inst.q
        if inst.q <= lp_max_q:
            r = compute_routes(inst, tol)
            rows.append([inst.p, inst.q, h, r.closed_value, r.lp1.value, r.lp2.value,
                         r.lp1_vs_lp2, r.lp_vs_closed, (r.best_value - h) / h ** 3])
            continue
        closed = dispatch_closed_form(inst)
        a = closed.value if closed else None
        rows.append([inst.p, inst.q, h, a, None, None, None, None,
                     None if a is None else (a - h) / h ** 3])
    return rows


def optimal_function(p: int, q: int, tol: float = DEFAULT_TOL) -> ExtremalFunction:
    r = compute_routes(_instance(p, q), tol)
    return ExtremalFunction(q, r.best_breakpoints)


def _emit(text: str, cfg: RunConfig):
    if cfg.output_path:
        with open(cfg.output_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _records_out(header: list[str], rows: list[list], cfg: RunConfig, footer=None) -> str:
    if cfg.output_format == "csv":
        return to_csv(header, rows, footer)
    payload = [dict(zip(header, row)) for row in rows]
    return dumps(payload) + "\n"


def cmd_compute(args, cfg: RunConfig) -> int:
    rec = compute_record(args.p, args.q, args.method, cfg.tolerance)
    if cfg.output_format == "csv":
        header = ["p", "q", "h", "method", "value", "breakpoints", "lp1_vs_lp2", "lp_vs_closed"]
        row = [rec["p"], rec["q"], rec["h"], rec["method"], rec["value"], rec["breakpoints"],
               rec["residuals"]["lp1_vs_lp2"], rec["residuals"]["lp_vs_closed"]]
        _emit(to_csv(header, [row]), cfg)
    else:
        _emit(dumps(rec) + "\n", cfg)
    return EXIT_OK


def cmd_table(args, cfg: RunConfig) -> int:
    rows = table_rows(args.family, args.max_q, cfg.tolerance, args.lp_max_q)
    _emit(_records_out(TABLE_HEADER, rows, cfg), cfg)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    if args.max_q > 40:
        raise CliError("--max-q must be <= 40 for verify", EXIT_INVALID)
    checks = run_checks(args.max_q, cfg.tolerance)
    if cfg.output_format == "json":
        text = dumps([c.__dict__ for c in checks]) + "\n"
    else:
        text = format_report(checks)
    _emit(text, cfg)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILED


def cmd_emit_function(args, cfg: RunConfig) -> int:
    if args.samples < 2:
        raise CliError("--samples must be >= 2", EXIT_INVALID)
    f = optimal_function(args.p, args.q, cfg.tolerance)
    xs = np.linspace(-0.5, 0.5, args.samples)
    rows = [[float(x), phi_eval(f, float(x))] for x in xs]
    _emit(_records_out(["x", "phi"], rows, cfg), cfg)
    return EXIT_OK


def cmd_fourier(args, cfg: RunConfig) -> int:
    if args.terms < 0:
        raise CliError("--terms must be >= 0", EXIT_INVALID)
    f = optimal_function(args.p, args.q, cfg.tolerance)
    alpha = fourier_spectrum(f, args.terms)
    rows = [[n, float(a)] for n, a in enumerate(alpha)]
    tail = tail_bound(f, args.terms)
    footer = [f"tail_bound={fmt_float(tail)}", f"partial_sum={fmt_float(float(alpha.sum()))}"]
    _emit(_records_out(["n", "alpha"], rows, cfg, footer), cfg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="turan", description="Turan extremal constant A(p/q).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="A(p/q) along one or all routes")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=("lp1", "lp2", "closed", "all"), default="all")
    p.set_defaults(func=cmd_compute, default_format="json")

    p = sub.add_parser("table", parents=[common], help="one row per instance of a family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--max-q", type=int, required=True)
    p.add_argument("--lp-max-q", type=int, default=DEFAULT_LP_MAX_Q,
                   help="solve the LPs only up to this q (default %(default)s)")
    p.set_defaults(func=cmd_table, default_format="csv")

    p = sub.add_parser("verify", parents=[common], help="cross-check every route")
    p.add_argument("--max-q", type=int, default=12)
    p.set_defaults(func=cmd_verify, default_format="text")

    p = sub.add_parser("emit-function", parents=[common], help="samples of the extremal function")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(func=cmd_emit_function, default_format="csv")

    p = sub.add_parser("fourier", parents=[common], help="cosine coefficients of the extremal function")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--terms", type=int, default=None)
    p.set_defaults(func=cmd_fourier, default_format="csv")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "terms", 0) is None:
            args.terms = 10 * args.q
        cfg = RunConfig(tolerance=args.tol, output_format=args.format or args.default_format,
                        output_path=args.out, fourier_terms=getattr(args, "terms", None))
        return args.func(args, cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except TuranError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
