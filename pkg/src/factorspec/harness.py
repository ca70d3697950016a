"""Catalog ingestion, extremal mining, equivalence suites, and verification sweeps.

This is the only stateful layer: it streams graph6 catalogs, fans per-graph
evaluation out to a worker pool, and reduces deterministically (max with a
lexicographically-least graph6 tie-break), so worker count never changes a
report.  JSON serialization rounds reals to 12 significant digits and omits
wall-clock fields, making reports byte-identical across runs.
"""

from __future__ import annotations

import dataclasses
import json
import multiprocessing
import os
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .conditions import (
    DegreeBounds,
    has_all_ab_factors,
    has_all_fractional_ab_factors,
)
from .extremal import (
    build_g1,
    build_g2,
    g1_partition,
    g12_min_order,
    g1_join_size,
    hnb_partition,
    build_hnb,
    hnb_witness,
    is_hnb,
    rho_hnb,
    rho_k1_join_cliques,
)
from .graph import Graph, Graph6Error, is_connected, parse_graph6, to_graph6
from .oracle import all_ab_factors_oracle, all_fractional_oracle
from .spectral import charpoly_eval_3x3, hong_bound, leading_eigenvalue, quotient_matrix, spectral_radius

MODES = ("integer", "fractional")
GRAPH6_HEADER = b">>graph6<<"


def stream_graph6(
    source: Iterable[bytes | str],
    lenient: bool = False,
    errors: Optional[list[tuple[int, str]]] = None,
) -> Iterator[Graph]:
    """Decode newline-delimited graph6 records lazily, 1-based line numbers.

    Malformed lines abort with the line number attached (strict, default) or
    are skipped and recorded in ``errors`` (lenient).  A one-time header is
    accepted either on its own first line or glued to the first record.
    """
    for lineno, line in enumerate(source, start=1):
        try:
            raw = line.encode("ascii") if isinstance(line, str) else line
        except UnicodeEncodeError as exc:
            if lenient:
                if errors is not None:
                    errors.append((lineno, "non-ascii character in record"))
                continue
            raise Graph6Error(f"line {lineno}: non-ascii character in record") from exc
        raw = raw.rstrip(b"\r\n")
        if lineno == 1 and raw == GRAPH6_HEADER:
            continue
        if not raw:
            continue
        try:
            yield parse_graph6(raw)
        except Graph6Error as exc:
            if lenient:
                if errors is not None:
                    errors.append((lineno, str(exc)))
                continue
            raise Graph6Error(f"line {lineno}: {exc}") from exc


def load_graph6_file(path: str | os.PathLike, lenient: bool = False) -> list[Graph]:
    with open(path, "rb") as fh:
        return list(stream_graph6(fh, lenient=lenient))


# -- deterministic parallel sweep ----------------------------------------------


def worker_count() -> int:
    env = os.environ.get("FACTORSPEC_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _sweep(fn: Callable, cases: list, workers: Optional[int]) -> list:
    """Order-preserving map, parallel when it pays off; output is identical
    to the sequential run by construction."""
    n_workers = worker_count() if workers is None else max(1, workers)
    if n_workers <= 1 or len(cases) < 4:
        return [fn(case) for case in cases]
    try:
        with multiprocessing.get_context().Pool(n_workers) as pool:
            chunk = max(1, len(cases) // (n_workers * 8))
            return pool.map(fn, cases, chunksize=chunk)
    except (OSError, PermissionError):  # e.g. sandboxes without /dev/shm
        return [fn(case) for case in cases]


def _decide(g: Graph, a: int, b: int, mode: str, cap: Optional[int]) -> bool:
    bounds = DegreeBounds(a, b)
    if mode == "integer":
        if cap is None:
            return has_all_ab_factors(g, bounds).verdict
        return has_all_ab_factors(g, bounds, cap=cap).verdict
    if cap is None:
        return has_all_fractional_ab_factors(g, bounds).verdict
    return has_all_fractional_ab_factors(g, bounds, cap=cap).verdict


def _mine_case(case: tuple[bytes, int, int, str, Optional[int]]) -> tuple[bytes, bool, Optional[float]]:
    g6, a, b, mode, cap = case
    g = parse_graph6(g6)
    if _decide(g, a, b, mode, cap):
        return (g6, True, None)
    return (g6, False, spectral_radius(g).rho)


def _oracle(g: Graph, a: int, b: int, mode: str) -> bool:
    bounds = DegreeBounds(a, b)
    if mode == "integer":
        return all_ab_factors_oracle(g, bounds)
    return all_fractional_oracle(g, bounds)


def _suite_case(case: tuple[bytes, int, int, str]) -> tuple[bytes, int, int, bool, bool]:
    g6, a, b, mode = case
    g = parse_graph6(g6)
    return (g6, a, b, _decide(g, a, b, mode, None), _oracle(g, a, b, mode))


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class MineReport:
    """Spectral-radius maximizer among the graphs lacking the factor property."""

    a: int
    b: int
    n: int
    mode: str
    cases_run: int
    failing_count: int
    max_rho_failing: Optional[float]
    argmax_graph: Optional[str]
    rho_hnb_reference: Optional[float]
    hnb_is_argmax: bool
    elapsed: float


@dataclass(frozen=True)
class SuiteMismatch:
    graph6: str
    a: int
    b: int
    decider: bool
    oracle: bool


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    cases_run: int
    mismatches: list[SuiteMismatch]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.mismatches


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one verification sweep: empty failures means the claim held."""

    name: str
    cases_run: int
    failures: list[dict]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.failures


def mine_extremal(
    graphs: Iterable[Graph],
    bounds: DegreeBounds,
    mode: str,
    workers: Optional[int] = None,
    cap: Optional[int] = None,
) -> MineReport:
    """Run the exact decider over a same-order catalog and report the
    spectral-radius maximizer among the failing graphs.

    Ties break to the lexicographically-least graph6 record, so the report
    does not depend on scheduling.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    t0 = time.perf_counter()
    glist = list(graphs)
    if not glist:
        raise ValueError("empty catalog")
    n = glist[0].n
    if any(g.n != n for g in glist):
        raise ValueError("mine_extremal requires all graphs to have the same order")
    cases = [(to_graph6(g), bounds.a, bounds.b, mode, cap) for g in glist]
    results = _sweep(_mine_case, cases, workers)
    failing = 0
    max_rho: Optional[float] = None
    argmax: Optional[bytes] = None
    for g6, ok, rho in results:
        if ok:
            continue
        failing += 1
        if max_rho is None or rho > max_rho or (rho == max_rho and g6 < argmax):
            max_rho, argmax = rho, g6
    reference = rho_hnb(n, bounds.b) if 2 <= bounds.b <= n - 1 else None
    return MineReport(
        a=bounds.a,
        b=bounds.b,
        n=n,
        mode=mode,
        cases_run=len(glist),
        failing_count=failing,
        max_rho_failing=max_rho,
        argmax_graph=argmax.decode("ascii") if argmax is not None else None,
        rho_hnb_reference=reference,
        hnb_is_argmax=argmax is not None and is_hnb(parse_graph6(argmax), bounds.b),
        elapsed=time.perf_counter() - t0,
    )


def equivalence_suite(
    graphs: Iterable[Graph],
    grid: Sequence[tuple[int, int]],
    mode: str,
    nmax: Optional[int] = None,
    workers: Optional[int] = None,
    decider: Optional[Callable[[Graph, DegreeBounds], bool]] = None,
    oracle: Optional[Callable[[Graph, DegreeBounds], bool]] = None,
) -> SuiteReport:
    """Decider-versus-oracle agreement over every connected graph of order
    <= nmax in the catalog, for each (a, b) of the grid.

    ``decider``/``oracle`` may be overridden (harness self-tests inject a
    corrupted decider); overrides run serially since they may not pickle.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if nmax is None:
        nmax = 7 if mode == "integer" else 8
    t0 = time.perf_counter()
    kept = [g for g in graphs if 1 <= g.n <= nmax and is_connected(g)]
    mismatches = []
    cases_run = 0
    if decider is not None or oracle is not None:
        use_decider = decider or (lambda g, bd: _decide(g, bd.a, bd.b, mode, None))
        use_oracle = oracle or (lambda g, bd: _oracle(g, bd.a, bd.b, mode))
        for g in kept:
            for a, b in grid:
                bd = DegreeBounds(a, b)
                d, o = use_decider(g, bd), use_oracle(g, bd)
                cases_run += 1
                if d != o:
                    mismatches.append(SuiteMismatch(to_graph6(g).decode("ascii"), a, b, d, o))
    else:
        cases = [(to_graph6(g), a, b, mode) for g in kept for a, b in grid]
        for g6, a, b, d, o in _sweep(_suite_case, cases, workers):
            cases_run += 1
            if d != o:
                mismatches.append(SuiteMismatch(g6.decode("ascii"), a, b, d, o))
    return SuiteReport(
        suite=f"{mode}-equivalence",
        cases_run=cases_run,
        mismatches=mismatches,
        elapsed=time.perf_counter() - t0,
    )


# -- verification sweeps (closed-form values and spectral bounds) --------------


def verify_hnb_witnesses(nmax: int = 40) -> VerifyReport:
    """Witness values at the hub of hnb: exactly -2 (integer) and -1
    (fractional) for every 3 <= b < n <= nmax."""
    t0 = time.perf_counter()
    cases = 0
    failures = []
    for n in range(4, nmax + 1):
        for b in range(3, n):
            cases += 1
            value = hnb_witness(n, b, "integer").min_value
            if value != -2:
                failures.append({"n": n, "b": b, "mode": "integer", "value": value})
            if b <= n - 2:
                cases += 1
                value = hnb_witness(n, b, "fractional").min_value
                if value != -1:
                    failures.append({"n": n, "b": b, "mode": "fractional", "value": value})
    return VerifyReport("hnb-witnesses", cases, failures, time.perf_counter() - t0)


def verify_g1_g2_bounds(amax: int = 5, bmax: int = 5, margin: float = 1e-6) -> VerifyReport:
    """At the minimum claimed order: exact characteristic-polynomial signs for
    the g1 quotient, and rho(g1), rho(g2) < n - 2 - margin."""
    t0 = time.perf_counter()
    cases = 0
    failures = []
    for b in range(1, bmax + 1):
        for a in range(1, min(b, amax) + 1):
            n = g12_min_order(a, b)
            cases += 1
            fail: dict = {}
            bq = quotient_matrix(build_g1(a, b, n), g1_partition(a, b, n))
            c = g1_join_size(a, b)
            f_nm2 = charpoly_eval_3x3(bq, n - 2)
            f_nm3 = charpoly_eval_3x3(bq, n - 3)
            if not (f_nm2 > 0):
                fail["f_nm2"] = str(f_nm2)
            if f_nm3 != -2 * c * c or not (f_nm3 < 0):
                fail["f_nm3"] = str(f_nm3)
            rho1 = spectral_radius(build_g1(a, b, n)).rho
            rho2 = spectral_radius(build_g2(b, n)).rho
            if not rho1 < n - 2 - margin:
                fail["rho_g1"] = rho1
            if not rho2 < n - 2 - margin:
                fail["rho_g2"] = rho2
            if fail:
                failures.append({"a": a, "b": b, "n": n, **fail})
    return VerifyReport("g1-g2-spectral-bounds", cases, failures, time.perf_counter() - t0)


def verify_hong(graphs: Iterable[Graph], tol: float = 1e-9) -> VerifyReport:
    """rho(G) <= sqrt(2m - n + 1) + tol on every connected graph supplied."""
    t0 = time.perf_counter()
    cases = 0
    failures = []
    for g in graphs:
        if g.n < 1 or not is_connected(g):
            continue
        cases += 1
        rho = spectral_radius(g).rho
        bound = hong_bound(g)
        if rho > bound + tol:
            failures.append({"graph6": to_graph6(g).decode("ascii"), "rho": rho, "bound": bound})
    return VerifyReport("hong-bound", cases, failures, time.perf_counter() - t0)


def verify_quotient_transfer(
    ns: Sequence[int] = (10, 100, 1000),
    bs: Sequence[int] = (2, 3, 5),
    tol: float = 1e-8,
) -> VerifyReport:
    """Quotient leading eigenvalue equals the dense spectral radius for hnb,
    and n - 2 < rho < n - 1 in every case."""
    t0 = time.perf_counter()
    cases = 0
    failures = []
    for n in ns:
        for b in bs:
            if not 2 <= b <= n - 1:
                continue
            cases += 1
            g = build_hnb(n, b)
            via_quotient = leading_eigenvalue(quotient_matrix(g, hnb_partition(n, b)))
            dense = spectral_radius(g).rho
            fail: dict = {}
            if abs(via_quotient - dense) > tol:
                fail["quotient"] = via_quotient
                fail["dense"] = dense
            if not n - 2 < via_quotient < n - 1:
                fail["rho_out_of_range"] = via_quotient
            if fail:
                failures.append({"n": n, "b": b, **fail})
    return VerifyReport("quotient-transfer", cases, failures, time.perf_counter() - t0)


def verify_k1_join_bound(
    ns: Sequence[int] = (10, 20, 50, 100), margin: float = 1e-6
) -> VerifyReport:
    """rho(K_1 joined to (K_r u K_{n-1-r})) < n - 2 - margin for 2 <= r <= n-3."""
    t0 = time.perf_counter()
    cases = 0
    failures = []
    for n in ns:
        for r in range(2, n - 2):
            cases += 1
            rho = rho_k1_join_cliques(n, r)
            if not rho < n - 2 - margin:
                failures.append({"n": n, "r": r, "rho": rho})
    return VerifyReport("hub-two-cliques-bound", cases, failures, time.perf_counter() - t0)


# -- JSON serialization ---------------------------------------------------------

SCHEMA_VERSION = 1


def _round12(value):
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def report_to_dict(report) -> dict:
    """Dataclass report -> JSON-ready dict: schema field added, reals rounded
    to 12 significant digits, wall-clock dropped for byte-stable output."""
    data = dataclasses.asdict(report)
    data.pop("elapsed", None)
    return {"schema": SCHEMA_VERSION, **_round12(data)}


def report_json(report) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True)
