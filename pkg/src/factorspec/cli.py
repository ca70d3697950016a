"""factorspec command line: exact factor checks, spectral radii, extremal
constructions, verification sweeps, mining, and equivalence suites.

Exit codes: 0 when the queried property holds (or the suite passed), 1 when
it fails (or a mismatch was found), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .conditions import (
    CapExceededError,
    ConditionReport,
    DegreeBounds,
    DegreeFunctions,
    has_all_ab_factors,
    has_all_fractional_ab_factors,
    has_all_gf_factors,
)
from .extremal import build_g1, build_g2, build_hnb, rho_hnb
from .graph import Graph, Graph6Error, from_edge_list, parse_graph6, to_graph6
from .harness import (
    SCHEMA_VERSION,
    equivalence_suite,
    load_graph6_file,
    mine_extremal,
    report_to_dict,
    verify_g1_g2_bounds,
    verify_hnb_witnesses,
    verify_hong,
    verify_k1_join_bound,
    verify_quotient_transfer,
    _round12,
)
from .spectral import spectral_radius


def _load_edges_file(path: str) -> Graph:
    """Edge-list file: first line n, then one 'u v' pair per line; # comments."""
    n: Optional[int] = None
    edges = []
    with open(path) as fh:
        for line in fh:
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if n is None:
                n = int(text)
                continue
            u, v = text.split()
            edges.append((int(u), int(v)))
    if n is None:
        raise ValueError(f"edge file {path} is empty")
    return from_edge_list(n, edges)


def _load_graph(args) -> Graph:
    if getattr(args, "g6", None):
        return parse_graph6(args.g6)
    return _load_edges_file(args.edges)


def _load_vertex_function(path: str, n: int) -> tuple[int, ...]:
    values = []
    with open(path) as fh:
        for line in fh:
            text = line.split("#", 1)[0].strip()
            if text:
                values.extend(int(tok) for tok in text.split())
    if len(values) != n:
        raise ValueError(f"{path} prescribes {len(values)} values for {n} vertices")
    return tuple(values)


def _emit(args, payload: dict, human_lines: list[str]) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA_VERSION, **_round12(payload)}, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _report_lines(report: ConditionReport) -> list[str]:
    lines = [
        f"verdict: {str(report.verdict).lower()}",
        f"min_value: {report.min_value}",
        f"witness_S: {sorted(report.witness_s)}",
    ]
    if report.witness_t is not None:
        lines.append(f"witness_T: {sorted(report.witness_t)}")
    lines.append(f"pairs_examined: {report.pairs_examined}")
    return lines


def _condition_payload(report: ConditionReport) -> dict:
    return {
        "verdict": report.verdict,
        "min_value": report.min_value,
        "witness_S": sorted(report.witness_s),
        "witness_T": sorted(report.witness_t) if report.witness_t is not None else None,
        "pairs_examined": report.pairs_examined,
    }


# -- subcommands ----------------------------------------------------------------


def cmd_check(args) -> int:
    g = _load_graph(args)
    kwargs = {} if args.cap is None else {"cap": args.cap}
    if args.mode == "gf":
        if not (args.g and args.f):
            raise ValueError("--mode gf needs --g FILE and --f FILE")
        funcs = DegreeFunctions(
            _load_vertex_function(args.g, g.n), _load_vertex_function(args.f, g.n)
        )
        report = has_all_gf_factors(g, funcs, **kwargs)
    else:
        if args.a is None or args.b is None:
            raise ValueError(f"--mode {args.mode} needs --a and --b")
        bounds = DegreeBounds(args.a, args.b)
        if args.mode == "integer":
            report = has_all_ab_factors(g, bounds, **kwargs)
        else:
            report = has_all_fractional_ab_factors(g, bounds, **kwargs)
    _emit(args, {"mode": args.mode, **_condition_payload(report)}, _report_lines(report))
    return 0 if report.verdict else 1


def cmd_rho(args) -> int:
    if args.hnb:
        n, b = (int(tok) for tok in args.hnb.split(","))
        rho = rho_hnb(n, b)
        payload = {
            "n": n,
            "b": b,
            "rho": rho,
            "n_minus_2": n - 2,
            "exceeds": rho > n - 2,
            "method": "quotient-3x3",
        }
        _emit(args, payload, [
            f"rho(hnb({n},{b})) = {rho:.12g}",
            f"n - 2 = {n - 2}",
            f"exceeds: {str(rho > n - 2).lower()}",
        ])
        return 0 if rho > n - 2 else 1
    g = parse_graph6(args.g6)
    result = spectral_radius(g, tol=args.tol)
    payload = {
        "n": g.n,
        "rho": result.rho,
        "residual": result.residual,
        "iterations": result.iterations,
        "method": result.method,
    }
    _emit(args, payload, [f"rho = {result.rho:.12g}  (residual {result.residual:.3g}, "
                          f"{result.iterations} iterations, {result.method})"])
    return 0


def cmd_construct(args) -> int:
    if args.kind == "hnb":
        g = build_hnb(args.n, args.b)
    elif args.kind == "g1":
        if args.a is None:
            raise ValueError("construct g1 needs --a")
        g = build_g1(args.a, args.b, args.n)
    else:
        g = build_g2(args.b, args.n)
    record = to_graph6(g).decode("ascii")
    _emit(args, {"kind": args.kind, "graph6": record, "n": g.n, "edges": g.edge_count()},
          [record])
    return 0


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


def cmd_verify(args) -> int:
    if args.target == "lemma24":
        report = verify_hnb_witnesses(nmax=args.nmax)
    elif args.target == "lemma23":
        report = verify_g1_g2_bounds(amax=args.amax, bmax=args.bmax, margin=args.margin)
    elif args.target == "hong":
        if not args.input:
            raise ValueError("verify hong needs --input FILE.g6")
        tol = 1e-9 if args.tol is None else args.tol
        report = verify_hong(load_graph6_file(args.input, lenient=args.lenient), tol=tol)
    elif args.target == "quotient":
        tol = 1e-8 if args.tol is None else args.tol
        report = verify_quotient_transfer(
            ns=_int_list(args.n_grid), bs=_int_list(args.b_grid), tol=tol
        )
    else:  # k1join
        report = verify_k1_join_bound(ns=_int_list(args.n_grid), margin=args.margin)
    lines = [
        f"{report.name}: {'PASS' if report.passed else 'FAIL'} "
        f"({report.cases_run} cases, {len(report.failures)} failures, "
        f"{report.elapsed:.2f}s)"
    ]
    lines.extend(f"  failure: {f}" for f in report.failures[:20])
    _emit(args, report_to_dict(report), lines)
    return 0 if report.passed else 1


def cmd_mine(args) -> int:
    graphs = load_graph6_file(args.input, lenient=args.lenient)
    report = mine_extremal(
        graphs,
        DegreeBounds(args.a, args.b),
        args.mode,
        workers=args.workers,
        cap=args.cap,
    )
    lines = [
        f"catalog: {report.cases_run} graphs of order {report.n}, mode {report.mode}, "
        f"(a,b)=({report.a},{report.b})",
        f"failing: {report.failing_count}",
        f"max rho among failing: {report.max_rho_failing}",
        f"argmax graph6: {report.argmax_graph}",
        f"rho_hnb reference: {report.rho_hnb_reference}",
        f"hnb is argmax: {str(report.hnb_is_argmax).lower()}",
        f"elapsed: {report.elapsed:.2f}s",
    ]
    _emit(args, report_to_dict(report), lines)
    return 0


def cmd_suite(args) -> int:
    graphs = load_graph6_file(args.input, lenient=args.lenient)
    grid = [tuple(int(x) for x in pair.split(",")) for pair in args.grid.split(";") if pair]
    report = equivalence_suite(graphs, grid, args.mode, nmax=args.nmax, workers=args.workers)
    lines = [
        f"{report.suite}: {'PASS' if report.passed else 'FAIL'} "
        f"({report.cases_run} cases, {len(report.mismatches)} mismatches, "
        f"{report.elapsed:.2f}s)"
    ]
    lines.extend(
        f"  mismatch: {m.graph6} (a,b)=({m.a},{m.b}) decider={m.decider} oracle={m.oracle}"
        for m in report.mismatches[:20]
    )
    _emit(args, report_to_dict(report), lines)
    return 0 if report.passed else 1


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factorspec",
        description="Exact all-[a,b]-factor deciders, spectral machinery, and "
        "the verification harness around them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide a factor property for one graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--g6", help="graph6 record")
    src.add_argument("--edges", help="edge-list file (first line n, then 'u v' lines)")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--mode", choices=["integer", "fractional", "gf"], default="integer")
    p.add_argument("--g", help="per-vertex g file (gf mode)")
    p.add_argument("--f", help="per-vertex f file (gf mode)")
    p.add_argument("--cap", type=int, help="override the exhaustive enumeration cap")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("rho", help="spectral radius of a graph or of hnb(n,b)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--g6", help="graph6 record (dense iteration)")
    src.add_argument("--hnb", metavar="N,B", help="closed-form quotient route")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("construct", help="emit a named extremal graph as graph6")
    p.add_argument("kind", choices=["hnb", "g1", "g2"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--a", type=int, help="g1 only")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run one verification sweep")
    p.add_argument("target", choices=["lemma23", "lemma24", "hong", "quotient", "k1join"])
    p.add_argument("--nmax", type=int, default=40, help="lemma24 grid bound")
    p.add_argument("--amax", type=int, default=5, help="lemma23 grid bound")
    p.add_argument("--bmax", type=int, default=5, help="lemma23 grid bound")
    p.add_argument("--margin", type=float, default=1e-6, help="strict-inequality margin")
    p.add_argument("--tol", type=float,
                   help="agreement tolerance (default: 1e-9 for hong, 1e-8 for quotient)")
    p.add_argument("--input", help="graph6 catalog (hong)")
    p.add_argument("--n-grid", default="10,100,1000", help="orders (quotient/k1join)")
    p.add_argument("--b-grid", default="2,3,5", help="b values (quotient)")
    p.add_argument("--lenient", action="store_true", help="skip malformed catalog lines")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mine", help="spectral-radius maximizer among failing graphs")
    p.add_argument("--input", required=True, help="graph6 catalog, one order")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--mode", choices=["integer", "fractional"], required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--lenient", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("suite", help="decider-vs-oracle equivalence sweep")
    p.add_argument("--input", required=True, help="graph6 catalog")
    p.add_argument("--nmax", type=int)
    p.add_argument("--grid", default="1,2;1,3;2,3", help="semicolon-separated a,b pairs")
    p.add_argument("--mode", choices=["integer", "fractional"], required=True)
    p.add_argument("--workers", type=int)
    p.add_argument("--lenient", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, Graph6Error, CapExceededError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
