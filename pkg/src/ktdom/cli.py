"""Command-line interface.

Four subcommands: gamma (general-graph solves), rook (complete-factor values,
certificates, formula), verify (a named bound on given factors), table (a
rook value grid with one certificate per cell).

Output is a JSON run report on stdout (--pretty switches to a human layout);
timing is printed to stderr so stdout stays byte-stable. Exit codes: 0 ok or
bound-not-applicable, 1 usage or parse problems (including oversized
instances), 2 infeasible or undefined requests, 3 alarms (a violated bound
or a certificate that fails its own predicate).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import bounds as bounds_mod
from .domination import Infeasible, SizeCapExceeded, gamma_bnb, is_kds, is_ktds
from .graphs import Graph, GraphParseError, parse_graph_expr
from .rook import (
    NoConstructionFound,
    PreconditionViolated,
    ZeroOneMatrix,
    build_min_2tds,
    gamma2_rook_formula,
    gamma_rook_exact,
    gamma_rook_manycols,
    is_ktds_matrix,
    set_to_matrix,
)

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_ALARM = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse from sys.exit(2)
        raise UsageError(message)


def _emit(report: dict, pretty_text: str | None = None) -> None:
    if pretty_text is not None:
        print(pretty_text)
    else:
        print(json.dumps(report, indent=2, sort_keys=True))


def _error_report(command: str, err_type: str, message: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": {"type": err_type, "message": message},
    }


def _graph_summary(expr: str, g: Graph) -> dict:
    return {"expr": expr, "n": g.n, "edges": g.num_edges}


# --- gamma -------------------------------------------------------------------


def _cmd_gamma(args) -> int:
    g = parse_graph_expr(args.graph)
    total = not args.closed
    kind = "total" if total else "closed"
    try:
        res = gamma_bnb(g, args.k, total=total, canonical=args.canonical)
    except Infeasible as exc:
        _emit(_error_report("gamma", "infeasible", str(exc)))
        return EXIT_INFEASIBLE
    if args.check:
        ok = (is_ktds if total else is_kds)(g, res.certificate, args.k)
        ok = ok and len(res.certificate) == res.value
        if not ok:
            _emit(_error_report("gamma", "check-failed", "certificate fails its predicate"))
            return EXIT_ALARM
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "gamma",
        "input": {
            "graph": _graph_summary(args.graph, g),
            "k": args.k,
            "kind": kind,
            "canonical": args.canonical,
        },
        "result": {"value": res.value, "certificate": list(res.certificate)},
    }
    pretty = None
    if args.pretty:
        cert = " ".join(str(v) for v in res.certificate)
        pretty = (
            f"k-tuple {kind} domination, k={args.k}, on {args.graph} "
            f"({g.n} vertices): value {res.value}\ncertificate: {cert}"
        )
    _emit(report, pretty)
    return EXIT_OK


# --- rook --------------------------------------------------------------------


def _rook_matrix_payload(mat: ZeroOneMatrix) -> dict:
    return {
        "matrix": mat.to_text().splitlines(),
        "compact": mat.to_compact(),
        "ones": mat.ones,
    }


def _cmd_rook(args) -> int:
    n, m, k = args.n, args.m, args.k
    if n < 1 or m < 1 or k < 1:
        raise UsageError(f"need n, m, k >= 1, got n={n} m={m} k={k}")
    result: dict
    mat: ZeroOneMatrix | None = None
    if args.mode == "formula":
        if k == 2:
            case = gamma2_rook_formula(n, m)
            if case.value is None:
                _emit(_error_report("rook", "undefined", f"no set exists for ({n},{m}) at k=2"))
                return EXIT_INFEASIBLE
            result = {"value": case.value, "case": case.case_id.value}
        else:
            value = gamma_rook_manycols(n, m, k)
            if value is None:
                raise UsageError(
                    f"no closed form covers n={n} m={m} k={k}; use --mode exact"
                )
            result = {"value": value, "case": "manycols"}
    elif args.mode == "exact":
        try:
            res = gamma_rook_exact(n, m, k, canonical=args.canonical)
        except Infeasible as exc:
            _emit(_error_report("rook", "infeasible", str(exc)))
            return EXIT_INFEASIBLE
        mat = set_to_matrix(res.certificate, n, m)
        result = {"value": res.value, "certificate": list(res.certificate)}
        result.update(_rook_matrix_payload(mat))
    else:  # certificate
        try:
            if k == 2:
                mat = build_min_2tds(n, m)
            else:
                res = gamma_rook_exact(n, m, k, canonical=args.canonical)
                mat = set_to_matrix(res.certificate, n, m)
        except Infeasible as exc:
            _emit(_error_report("rook", "infeasible", str(exc)))
            return EXIT_INFEASIBLE
        result = {"value": mat.ones}
        result.update(_rook_matrix_payload(mat))
    if args.check and mat is not None:
        if not is_ktds_matrix(mat, k) or mat.ones != result["value"]:
            _emit(_error_report("rook", "check-failed", "matrix fails its predicate"))
            return EXIT_ALARM
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "rook",
        "input": {"n": n, "m": m, "k": k, "mode": args.mode, "canonical": args.canonical},
        "result": result,
    }
    pretty = None
    if args.pretty:
        lines = [f"K_{n} x K_{m}, k={k}, mode={args.mode}: value {result['value']}"]
        if mat is not None:
            lines.append(mat.to_text())
        pretty = "\n".join(lines)
    _emit(report, pretty)
    return EXIT_OK


# --- verify ------------------------------------------------------------------

_UNARY_BOUNDS = {"degree-lb", "packing-lb"}
_K_FREE_BOUNDS = {"packing-product", "vizing-conjecture"}


def _cmd_verify(args) -> int:
    bound = args.bound
    if bound not in bounds_mod.ALL_BOUND_IDS:
        raise UsageError(f"unknown bound {bound!r}; choose from {', '.join(bounds_mod.ALL_BOUND_IDS)}")
    g = parse_graph_expr(args.g)
    h = parse_graph_expr(args.h) if args.h else None
    k = args.k
    if bound in _UNARY_BOUNDS:
        if h is not None:
            raise UsageError(f"{bound} takes only --g")
    elif h is None:
        raise UsageError(f"{bound} needs --h")
    if bound not in _K_FREE_BOUNDS and k is None:
        raise UsageError(f"{bound} needs --k")
    if bound == "degree-lb":
        report = bounds_mod.check_degree_lb(g, k)
    elif bound == "packing-lb":
        report = bounds_mod.check_packing_lb(g, k)
    elif bound == "vizing-like":
        report = bounds_mod.check_vizing_like(g, h, k)
    elif bound == "packing-product":
        report = bounds_mod.check_packing_product(g, h)
    elif bound == "open-packing-sum":
        report = bounds_mod.check_open_packing_sum(g, h, k)
    elif bound == "product-upper":
        report = bounds_mod.check_product_upper(g, h, k)
    elif bound == "rook-extremal":
        report = bounds_mod.check_rook_extremal(g, h, k)
    else:
        report = bounds_mod.check_vizing_conjecture(g, h)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "input": {
            "bound": bound,
            "g": _graph_summary(args.g, g),
            "h": _graph_summary(args.h, h) if h is not None else None,
            "k": k,
        },
        "result": report.as_dict(),
    }
    pretty = None
    if args.pretty:
        state = (
            "not applicable"
            if not report.applicable
            else ("holds" if report.holds else "VIOLATED")
        )
        pretty = f"{bound}: lhs={report.lhs} rhs={report.rhs} -> {state}"
    _emit(payload, pretty)
    if report.applicable and not report.holds:
        return EXIT_ALARM
    return EXIT_OK


# --- table -------------------------------------------------------------------


def _compute_cell(n: int, m: int, k: int, canonical: bool) -> dict:
    cell: dict = {"n": n, "m": m, "k": k}
    if k == 2 and (n, m) in ((1, 1), (1, 2)):
        cell.update(status="undefined", value=None, ones=None, compact=None)
        return cell
    if n + m - 2 < k:
        cell.update(status="infeasible", value=None, ones=None, compact=None)
        return cell
    if k == 2:
        value = gamma2_rook_formula(n, m).value
        mat = build_min_2tds(n, m)
    else:
        res = gamma_rook_exact(n, m, k, canonical=canonical)
        value = res.value
        mat = set_to_matrix(res.certificate, n, m)
    if not is_ktds_matrix(mat, k) or mat.ones != value:
        raise RuntimeError(f"cell ({n},{m},k={k}) produced a defective certificate")
    cell.update(status="ok", value=value, ones=mat.ones, compact=mat.to_compact())
    return cell


def _table_cell_worker(spec: tuple[int, int, int, bool]) -> dict:
    n, m, k, canonical = spec
    return _compute_cell(n, m, k, canonical)


def _pretty_table(k: int, max_n: int, max_m: int, cells: list[dict]) -> str:
    by_pos = {(c["n"], c["m"]): c for c in cells}
    width = max(3, len(str(max(((c["value"] or 0) for c in cells), default=0))) + 1)
    lines = [f"k={k} minimum sizes on K_n x K_m (rows n, columns m; '-' none exists)"]
    header = "n\\m" + "".join(f"{m:>{width}}" for m in range(1, max_m + 1))
    lines.append(header)
    for n in range(1, max_n + 1):
        row = [f"{n:<3}"]
        for m in range(1, max_m + 1):
            c = by_pos.get((n, m))
            if c is None:
                row.append(" " * width)
            elif c["status"] == "ok":
                row.append(f"{c['value']:>{width}}")
            else:
                row.append(f"{'-':>{width}}")
        lines.append("".join(row))
    return "\n".join(lines)


def _cmd_table(args) -> int:
    k, max_n, max_m = args.k, args.max_n, args.max_m
    if k < 1 or max_n < 1 or max_m < 1:
        raise UsageError(f"need k, max-n, max-m >= 1, got k={k} max-n={max_n} max-m={max_m}")
    specs = [
        (n, m, k, args.canonical)
        for n in range(1, max_n + 1)
        for m in range(n, max_m + 1)
    ]
    if args.threads > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            cells = list(pool.map(_table_cell_worker, specs))
    else:
        cells = [_compute_cell(*s) for s in specs]
    cells.sort(key=lambda c: (c["n"], c["m"]))
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "table",
        "input": {
            "k": k,
            "max_n": max_n,
            "max_m": max_m,
            "canonical": args.canonical,
            "threads": args.threads,
        },
        "result": {"cells": cells},
    }
    pretty = _pretty_table(k, max_n, max_m, cells) if args.pretty else None
    _emit(report, pretty)
    return EXIT_OK


# --- wiring ------------------------------------------------------------------


def _default_threads() -> int:
    raw = os.environ.get("KTDOM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ktdom", description="k-tuple total domination toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gamma = sub.add_parser("gamma", help="solve a graph expression exactly")
    p_gamma.add_argument("--graph", required=True, help="e.g. K3xK4, C7, P, star(C5,1)xK2, @edges.txt")
    p_gamma.add_argument("--k", type=int, required=True)
    p_gamma.add_argument("--closed", action="store_true", help="closed neighborhoods instead of total")
    p_gamma.add_argument("--canonical", action="store_true", help="lexicographically least certificate")
    p_gamma.add_argument("--check", action="store_true", help="re-verify the certificate before emitting")
    p_gamma.add_argument("--pretty", action="store_true")
    p_gamma.set_defaults(func=_cmd_gamma)

    p_rook = sub.add_parser("rook", help="complete-factor products K_n x K_m")
    p_rook.add_argument("--n", type=int, required=True)
    p_rook.add_argument("--m", type=int, required=True)
    p_rook.add_argument("--k", type=int, required=True)
    p_rook.add_argument("--mode", choices=("formula", "exact", "certificate"), default="formula")
    p_rook.add_argument("--canonical", action="store_true")
    p_rook.add_argument("--check", action="store_true")
    p_rook.add_argument("--pretty", action="store_true")
    p_rook.set_defaults(func=_cmd_rook)

    p_verify = sub.add_parser("verify", help="check one bound on given factors")
    p_verify.add_argument("--bound", required=True, help=", ".join(bounds_mod.ALL_BOUND_IDS))
    p_verify.add_argument("--g", required=True, help="graph expression")
    p_verify.add_argument("--h", help="second factor (product bounds)")
    p_verify.add_argument("--k", type=int)
    p_verify.add_argument("--pretty", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)

    p_table = sub.add_parser("table", help="value/certificate grid over K_n x K_m")
    p_table.add_argument("--k", type=int, required=True)
    p_table.add_argument("--max-n", type=int, required=True)
    p_table.add_argument("--max-m", type=int, required=True)
    p_table.add_argument("--canonical", action="store_true")
    p_table.add_argument("--threads", type=int, default=_default_threads(),
                         help="cells solved in parallel processes (default $KTDOM_THREADS or 1)")
    p_table.add_argument("--pretty", action="store_true")
    p_table.set_defaults(func=_cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    command = "?"
    started = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        command = args.command
        code = args.func(args)
    except UsageError as exc:
        _emit(_error_report(command, "usage", str(exc)))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphParseError as exc:
        _emit(_error_report(command, "parse", str(exc)))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SizeCapExceeded, PreconditionViolated, ValueError) as exc:
        _emit(_error_report(command, "usage", str(exc)))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Infeasible as exc:
        _emit(_error_report(command, "infeasible", str(exc)))
        return EXIT_INFEASIBLE
    except (NoConstructionFound, RuntimeError) as exc:
        _emit(_error_report(command, "defect", str(exc)))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALARM
    finally:
        elapsed = time.perf_counter() - started
        print(f"wall time: {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
