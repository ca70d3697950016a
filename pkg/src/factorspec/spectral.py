"""Spectral radius machinery.

Dense power iteration for the adjacency spectral radius, Hong's edge bound for
connected graphs, quotient matrices of vertex partitions with an equitability
check, and exact leading-root extraction for quotients of size at most 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, component_masks, is_connected, iter_bits, mask_of


class ConvergenceError(RuntimeError):
    """Eigen-iteration hit its cap; ``best`` holds the last estimate."""

    def __init__(self, message: str, best: "SpectralResult"):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    residual: float
    iterations: int
    method: str


def _power_iteration(a: np.ndarray, tol: float, cap: int) -> tuple[float, float, int, bool]:
    """Largest eigenvalue of symmetric nonnegative ``a`` via iteration on a + I.

    The +I shift keeps bipartite components from oscillating with period 2;
    the all-ones start vector is never orthogonal to the Perron vector of a
    connected component.  Returns (rho, inf-norm residual, iterations, ok);
    ``ok`` is False when the cap was hit first.
    """
    k = a.shape[0]
    x = np.full(k, 1.0 / math.sqrt(k))
    lam = 0.0
    res_inf = math.inf
    for it in range(1, cap + 1):
        ax = a @ x
        lam = float(x @ ax)
        r = ax - lam * x
        # l2 residual of a unit vector bounds the eigenvalue error for
        # symmetric matrices, so converging on it certifies rho within tol
        if float(np.linalg.norm(r)) <= tol:
            return lam, float(np.max(np.abs(r))), it, True
        res_inf = float(np.max(np.abs(r)))
        y = ax + x
        x = y / float(np.linalg.norm(y))
    return lam, res_inf, cap, False


def _component_matrix(g: Graph, comp: int) -> np.ndarray:
    verts = list(iter_bits(comp))
    index = {v: i for i, v in enumerate(verts)}
    a = np.zeros((len(verts), len(verts)))
    for v in verts:
        i = index[v]
        for u in iter_bits(g.rows[v] & comp):
            a[i, index[u]] = 1.0
    return a


def spectral_radius(g: Graph, tol: float = 1e-10) -> SpectralResult:
    """Largest adjacency eigenvalue; maximum over components when disconnected."""
    if g.n < 1:
        raise ValueError("spectral radius needs at least one vertex")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    best_rho = 0.0
    best_res = 0.0
    total_iters = 0
    for comp in component_masks(g.rows, g.n, 0):
        k = comp.bit_count()
        if k == 1:
            continue  # isolated vertex contributes eigenvalue 0
        a = _component_matrix(g, comp)
        cap = 100 * k + 1000
        rho, res, iters, ok = _power_iteration(a, tol, cap)
        total_iters += iters
        if not ok:
            best = SpectralResult(max(best_rho, rho), res, total_iters, "dense-iteration")
            raise ConvergenceError(
                f"power iteration did not reach tol={tol} within {cap} iterations", best
            )
        if rho > best_rho:
            best_rho = rho
            best_res = res
    return SpectralResult(best_rho, best_res, total_iters, "dense-iteration")


def hong_bound(g: Graph) -> float:
    """Edge-count bound sqrt(2m - n + 1) on the spectral radius; connected graphs only."""
    if not is_connected(g):
        raise ValueError("the sqrt(2m - n + 1) bound is only valid for connected graphs")
    return math.sqrt(2 * g.edge_count() - g.n + 1)


@dataclass(frozen=True)
class QuotientMatrix:
    """k x k average-neighbour-count matrix of a vertex partition."""

    entries: tuple[tuple[Fraction, ...], ...]
    part_sizes: tuple[int, ...]
    equitable: bool

    @property
    def k(self) -> int:
        return len(self.part_sizes)

    def __post_init__(self) -> None:
        k = len(self.part_sizes)
        if len(self.entries) != k or any(len(row) != k for row in self.entries):
            raise ValueError("entries must be a k x k matrix")
        if any(s <= 0 for s in self.part_sizes):
            raise ValueError("part sizes must be positive")
        for i in range(k):
            for j in range(k):
                if self.entries[i][j] < 0:
                    raise ValueError("quotient entries must be nonnegative")
                # both count the edges between parts i and j
                if self.part_sizes[i] * self.entries[i][j] != self.part_sizes[j] * self.entries[j][i]:
                    raise ValueError(f"edge-count symmetry violated between parts {i} and {j}")

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(row, Fraction(0)) for row in self.entries)


def quotient_matrix(g: Graph, parts: Sequence[Iterable[int]]) -> QuotientMatrix:
    """Quotient of A(G) with respect to a partition of V(G).

    Entry (i, j) is the average number of neighbours a part-i vertex has in
    part j; the partition is equitable when that count is the same for every
    vertex of part i, for all (i, j).
    """
    masks = [mask_of(p, g.n) for p in parts]
    if any(m == 0 for m in masks):
        raise ValueError("partition parts must be nonempty")
    union = 0
    for m in masks:
        if union & m:
            raise ValueError("partition parts must be pairwise disjoint")
        union |= m
    if union != (1 << g.n) - 1:
        raise ValueError("partition must cover every vertex")

    k = len(masks)
    sizes = tuple(m.bit_count() for m in masks)
    entries = []
    equitable = True
    for i in range(k):
        row = []
        for j in range(k):
            counts = {(g.rows[v] & masks[j]).bit_count() for v in iter_bits(masks[i])}
            if len(counts) > 1:
                equitable = False
                total = sum((g.rows[v] & masks[j]).bit_count() for v in iter_bits(masks[i]))
                row.append(Fraction(total, sizes[i]))
            else:
                row.append(Fraction(counts.pop()))
        entries.append(tuple(row))
    return QuotientMatrix(tuple(entries), sizes, equitable)


# -- exact leading roots of small quotients ----------------------------------


def _charpoly_coeffs(b: QuotientMatrix) -> list[Fraction]:
    """Monic characteristic polynomial coefficients, highest power first, k <= 3."""
    e = b.entries
    if b.k == 1:
        return [Fraction(1), -e[0][0]]
    if b.k == 2:
        tr = e[0][0] + e[1][1]
        det = e[0][0] * e[1][1] - e[0][1] * e[1][0]
        return [Fraction(1), -tr, det]
    if b.k == 3:
        tr = e[0][0] + e[1][1] + e[2][2]
        minors = (
            e[1][1] * e[2][2] - e[1][2] * e[2][1]
            + e[0][0] * e[2][2] - e[0][2] * e[2][0]
            + e[0][0] * e[1][1] - e[0][1] * e[1][0]
        )
        det = (
            e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
            - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
            + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0])
        )
        return [Fraction(1), -tr, minors, -det]
    raise ValueError("charpoly coefficients only implemented for k <= 3")


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _poly_derive(coeffs: Sequence[Fraction]) -> list[Fraction]:
    deg = len(coeffs) - 1
    return [c * (deg - i) for i, c in enumerate(coeffs[:-1])]


def _newton_from_above(coeffs: Sequence[float], x0: float) -> float:
    """Largest root of a monic real-rooted polynomial, starting above it.

    Above the largest root all derivatives are positive, so the iteration
    decreases monotonically; stop on stagnation from rounding.
    """
    x = x0
    for _ in range(200):
        p = 0.0
        dp = 0.0
        for c in coeffs:
            dp = dp * x + p
            p = p * x + c
        if dp <= 0.0:
            break
        x_new = x - p / dp
        if not x_new < x:
            break
        if x - x_new <= 1e-15 * max(1.0, abs(x)):
            x = x_new
            break
        x = x_new
    return x


def _certified_largest_root(coeffs: list[Fraction], upper: Fraction) -> float:
    """Largest root via Newton plus an exact-arithmetic bisection polish.

    Establishes a rational bracket [lo, hi] with p(lo) < 0 < p(hi) and
    p'(lo) > 0 (so lo is above every other root), then bisects it to width
    1e-12.  Falls back to the float Newton value when the bracket cannot be
    certified (e.g. a repeated leading root).
    """
    float_coeffs = [float(c) for c in coeffs]
    x = _newton_from_above(float_coeffs, float(upper) + 1.0)
    deriv = _poly_derive(coeffs)
    eps = Fraction(1, 10**9)
    for _ in range(4):
        lo = Fraction(x) - eps
        hi = Fraction(x) + eps
        if _poly_eval(coeffs, lo) < 0 < _poly_eval(coeffs, hi) and _poly_eval(deriv, lo) > 0:
            for _ in range(60):
                if hi - lo <= Fraction(1, 10**12):
                    break
                mid = (lo + hi) / 2
                if _poly_eval(coeffs, mid) < 0:
                    lo = mid
                else:
                    hi = mid
            return float((lo + hi) / 2)
        eps *= 10
    return x


def leading_eigenvalue(b: QuotientMatrix) -> float:
    """Largest eigenvalue of an equitable quotient matrix.

    For k <= 3 the root is isolated from exact characteristic-polynomial
    coefficients; larger quotients are symmetrised by the part sizes and
    handed to a dense symmetric eigensolver.  By eigenvalue transfer this
    equals the spectral radius of the underlying graph whenever that graph
    is connected.
    """
    if not b.equitable:
        raise ValueError("leading eigenvalue transfer requires an equitable quotient")
    if b.k <= 3:
        coeffs = _charpoly_coeffs(b)
        return _certified_largest_root(coeffs, max(b.row_sums()))
    scale = np.sqrt(np.array(b.part_sizes, dtype=float))
    m = np.array([[float(x) for x in row] for row in b.entries])
    sym = m * scale[:, None] / scale[None, :]
    return float(np.linalg.eigvalsh(sym)[-1])


def charpoly_eval_3x3(b: QuotientMatrix, x: int | Fraction) -> Fraction:
    """det(x I - B) for a 3-part quotient, in exact rational arithmetic."""
    if b.k != 3:
        raise ValueError("charpoly_eval_3x3 requires a 3-part quotient")
    return _poly_eval(_charpoly_coeffs(b), Fraction(x))
