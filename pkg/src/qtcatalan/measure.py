"""Measures built from continuous Dyck paths.

This is the floating-point layer of the library: uniform sampling of the
area polytope, vectorized path statistics, 2D histograms of the pushforward
measures, the exact piecewise-linear density for height 4, and the two
experiment drivers (convergence of normalized discrete measures, and
invariance of the sampling measure under the sorting transform).

Everything is seeded and byte-deterministic; exact rational arithmetic is
used for volumes, lattice counts, and the height-4 density integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .discrete import BudgetExceededError, catalan_number_m
from .qtpoly import DiscreteMeasure

__all__ = [
    "SampleBatch",
    "Histogram2D",
    "polytope_volume",
    "ehrhart_check",
    "sample_area_polytope",
    "batch_area",
    "batch_dinv",
    "batch_bounce_vector",
    "batch_bounce",
    "batch_transform_T",
    "pushforward_histogram",
    "bin_discrete_measure",
    "l1_distance",
    "exact_density_n4",
    "density_n4_cell_integrals",
    "density_n4_total_integral",
    "convergence_report",
    "measure_preservation_check",
]

MapChoice = Literal["dinv-area", "area-bounce"]


def polytope_volume(n: int) -> Fraction:
    """Volume of the area polytope as a full-dimensional polytope: n^(n-2)/(n-1)!."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return Fraction(1)
    return Fraction(n ** (n - 2), math.factorial(n - 1))


def ehrhart_check(n: int, m: int, budget: int | None = None) -> dict:
    """Count 1/m-integral points of the area polytope by direct enumeration
    and compare with the higher Catalan number."""
    expected = catalan_number_m(n, m)
    if budget is not None and expected > budget:
        raise BudgetExceededError(
            f"(n={n}, m={m}) expects {expected} lattice points, budget is {budget}"
        )
    # integer scaled coordinates c_i = m * a_i with 0 <= c_{i+1} <= c_i + m
    def count_from(level: int, prev: int) -> int:
        if level == n:
            return 1
        return sum(count_from(level + 1, c) for c in range(prev + m + 1))

    found = count_from(1, 0) if n > 1 else 1
    return {"n": n, "m": m, "expected": expected, "found": found, "ok": found == expected}


@dataclass(frozen=True)
class SampleBatch:
    """Uniform samples of the area polytope, with rejection bookkeeping."""

    n: int
    seed: int
    points: np.ndarray  # shape (count, n), first column identically 0
    proposed: int
    accepted: int

    @property
    def count(self) -> int:
        return self.points.shape[0]

    @property
    def acceptance_ratio(self) -> float:
        return self.accepted / self.proposed


def _accept_mask(block: np.ndarray) -> np.ndarray:
    """Rows of a (k, n) proposal block satisfying a_{i+1} <= a_i + 1."""
    ok = np.ones(block.shape[0], dtype=bool)
    for i in range(1, block.shape[1] - 1):
        ok &= block[:, i + 1] <= block[:, i] + 1
    return ok


def sample_area_polytope(
    n: int, count: int, seed: int, *, rng: np.random.Generator | None = None
) -> SampleBatch:
    """Rejection-sample uniform points of the area polytope.

    Proposals are uniform in the box prod_i [0, i] for the free coordinates
    a_1, ..., a_{n-1} (a_i <= i holds on the polytope by induction), so the
    acceptance ratio estimates vol(A_n) / (n-1)!.
    """
    if n < 2:
        raise ValueError("sampling needs n >= 2")
    if count < 1:
        raise ValueError("count must be positive")
    if rng is None:
        rng = np.random.default_rng(seed)
    highs = np.arange(1, n, dtype=float)
    kept: list[np.ndarray] = []
    accepted = 0
    proposed = 0
    while accepted < count:
        k = max(count - accepted, 1024)
        # oversample by the inverse of the known acceptance probability
        k = int(k / float(polytope_volume(n) / math.factorial(n - 1)) * 1.1) + 16
        k = min(k, 4_000_000)
        block = np.empty((k, n))
        block[:, 0] = 0.0
        block[:, 1:] = rng.uniform(0.0, 1.0, size=(k, n - 1)) * highs
        ok = _accept_mask(block)
        proposed += k
        good = block[ok]
        accepted += good.shape[0]
        kept.append(good)
    points = np.concatenate(kept, axis=0)[:count]
    return SampleBatch(n=n, seed=seed, points=points, proposed=proposed, accepted=accepted)


def batch_area(points: np.ndarray) -> np.ndarray:
    return points.sum(axis=1)


def batch_dinv(points: np.ndarray) -> np.ndarray:
    n = points.shape[1]
    out = np.zeros(points.shape[0])
    for i in range(n):
        for j in range(i + 1, n):
            out += np.maximum(1.0 - np.abs(points[:, i] - points[:, j]), 0.0)
    return out


def batch_bounce_vector(points: np.ndarray) -> np.ndarray:
    """Vectorized event-driven bounce parametrization (float).

    Mirrors the exact simulation in continuous.bounce_vector: every sample
    processes one event per sweep (take a north step, or expire one from the
    trailing window), and all samples advance in lockstep.
    """
    points = np.asarray(points, dtype=float)
    count, n = points.shape
    x = np.arange(n)[None, :] - points
    b = np.zeros((count, n))
    t = np.zeros(count)
    r = np.zeros(count)
    taken = np.zeros(count, dtype=np.intp)
    expired = np.zeros(count, dtype=np.intp)
    live = taken < n
    while live.any():
        idx = np.nonzero(live)[0]
        xj = x[idx, taken[idx]]
        at_target = r[idx] >= xj - 1e-12
        hit = idx[at_target]
        b[hit, taken[hit]] = t[hit]
        taken[hit] += 1
        move = idx[~at_target]
        if move.size:
            speed = (taken[move] - expired[move]).astype(float)
            if np.any(speed == 0):
                raise ValueError("bounce parametrization stalled on invalid input")
            t_target = t[move] + (x[move, taken[move]] - r[move]) / speed
            t_expiry = b[move, expired[move]] + 1.0
            expire_first = t_expiry < t_target
            e = move[expire_first]
            r[e] += speed[expire_first] * (t_expiry[expire_first] - t[e])
            t[e] = t_expiry[expire_first]
            expired[e] += 1
            g = move[~expire_first]
            r[g] = x[g, taken[g]]
            t[g] = t_target[~expire_first]
        live = taken < n
    return b


def batch_bounce(points: np.ndarray) -> np.ndarray:
    return batch_bounce_vector(points).sum(axis=1)


def batch_transform_T(points: np.ndarray) -> np.ndarray:
    """Vectorized sorting transform: sorted area vector reinterpreted as a
    bounce vector, converted back to area coordinates."""
    b = np.sort(np.asarray(points, dtype=float), axis=1)
    count, n = b.shape
    out = np.zeros((count, n))
    for j in range(1, n):
        out[:, j] = np.maximum(1.0 - (b[:, j : j + 1] - b[:, :j]), 0.0).sum(axis=1)
    return out


@dataclass(frozen=True)
class Histogram2D:
    """Dense 2D histogram with half-open cells (last cell closed)."""

    bounds: tuple[Fraction, Fraction, Fraction, Fraction]  # x_lo, x_hi, y_lo, y_hi
    resolution: tuple[int, int]
    cells: np.ndarray  # shape resolution, weights
    total_weight: float

    def cell_edges(self) -> tuple[np.ndarray, np.ndarray]:
        x_lo, x_hi, y_lo, y_hi = (float(v) for v in self.bounds)
        return (
            np.linspace(x_lo, x_hi, self.resolution[0] + 1),
            np.linspace(y_lo, y_hi, self.resolution[1] + 1),
        )

    def to_csv(self) -> str:
        xs, ys = self.cell_edges()
        lines = ["x_lo,x_hi,y_lo,y_hi,weight"]
        for i in range(self.resolution[0]):
            for j in range(self.resolution[1]):
                lines.append(
                    f"{xs[i]!r},{xs[i + 1]!r},{ys[j]!r},{ys[j + 1]!r},{self.cells[i, j]!r}"
                )
        return "\n".join(lines) + "\n"

    def transpose_deviation(self) -> float:
        """L1 distance between the histogram and its reflection across y = x."""
        if self.resolution[0] != self.resolution[1]:
            raise ValueError("transpose deviation needs a square grid")
        return float(np.abs(self.cells - self.cells.T).sum())


def default_bounds(n: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Support box [0, n(n-1)/2]^2 from the staircase maximum of the statistics."""
    hi = Fraction(n * (n - 1), 2)
    if hi == 0:
        hi = Fraction(1)  # degenerate n = 1 support is the single point (0, 0)
    return (Fraction(0), hi, Fraction(0), hi)


def pushforward_histogram(
    batch: SampleBatch,
    map_choice: MapChoice,
    resolution: tuple[int, int] = (60, 60),
    bounds: tuple[Fraction, Fraction, Fraction, Fraction] | None = None,
) -> Histogram2D:
    """Histogram the image of a sample batch; each sample carries weight
    vol(A_n) / count so the total weight is the polytope volume."""
    if bounds is None:
        bounds = default_bounds(batch.n)
    if map_choice == "dinv-area":
        xs = batch_dinv(batch.points)
        ys = batch_area(batch.points)
    elif map_choice == "area-bounce":
        xs = batch_area(batch.points)
        ys = batch_bounce(batch.points)
    else:
        raise ValueError(f"unknown map choice {map_choice!r}")
    x_lo, x_hi, y_lo, y_hi = (float(v) for v in bounds)
    cells, _, _ = np.histogram2d(
        xs, ys, bins=resolution, range=[[x_lo, x_hi], [y_lo, y_hi]]
    )
    weight = float(polytope_volume(batch.n)) / batch.count
    cells *= weight
    return Histogram2D(
        bounds=bounds,
        resolution=resolution,
        cells=cells,
        total_weight=weight * batch.count,
    )


def bin_discrete_measure(
    measure: DiscreteMeasure,
    resolution: tuple[int, int],
    bounds: tuple[Fraction, Fraction, Fraction, Fraction],
) -> Histogram2D:
    """Bin rational atoms onto the grid with exact cell-index arithmetic.

    Cells are half-open on the right except the last cell, which is closed, so
    atoms on the outer boundary are retained.
    """
    x_lo, x_hi, y_lo, y_hi = (Fraction(v) for v in bounds)
    cx, cy = resolution
    cells = np.zeros(resolution)
    total = 0.0
    for (x, y), w in measure.atoms:
        if not (x_lo <= x <= x_hi and y_lo <= y <= y_hi):
            continue
        i = min(int((x - x_lo) * cx / (x_hi - x_lo)), cx - 1)
        j = min(int((y - y_lo) * cy / (y_hi - y_lo)), cy - 1)
        cells[i, j] += float(w)
        total += float(w)
    return Histogram2D(bounds=(x_lo, x_hi, y_lo, y_hi), resolution=resolution, cells=cells, total_weight=total)


def l1_distance(h1: Histogram2D, h2: Histogram2D) -> float:
    if h1.resolution != h2.resolution or h1.bounds != h2.bounds:
        raise ValueError("histograms must share grid and bounds")
    return float(np.abs(h1.cells - h2.cells).sum())


# ---------------------------------------------------------------------------
# Exact density for height 4.
#
# The support is the quadrilateral with corners (6,0), (3,1), (1,3), (0,6)
# (the lower boundary runs along x + y = 4), subdivided by the chords from
# (6,0) and (0,6) to (2,2) into three triangles carrying linear pieces.  The
# piecewise-linear function vanishing on the outer boundary with kinks only
# on those chords is determined up to scale; the scale is fixed by the total
# mass vol(A_4) = 8/3, giving the pieces below.

_DENSITY_N4_TRIANGLES: list[tuple[list[tuple[Fraction, Fraction]], tuple[Fraction, Fraction, Fraction]]] = [
    # vertices, coefficients (alpha, beta, gamma) of f = alpha*x + beta*y + gamma
    (
        [(Fraction(0), Fraction(6)), (Fraction(1), Fraction(3)), (Fraction(2), Fraction(2))],
        (Fraction(3, 2), Fraction(1, 2), Fraction(-3)),
    ),
    (
        [(Fraction(6), Fraction(0)), (Fraction(2), Fraction(2)), (Fraction(0), Fraction(6))],
        (Fraction(-1, 2), Fraction(-1, 2), Fraction(3)),
    ),
    (
        [(Fraction(6), Fraction(0)), (Fraction(3), Fraction(1)), (Fraction(2), Fraction(2))],
        (Fraction(1, 2), Fraction(3, 2), Fraction(-3)),
    ),
]


def exact_density_n4(x: float, y: float) -> float:
    """Density of the height-4 pushforward measure at (x, y).

    Piecewise linear on three triangular regions; region boundaries other
    than the lower support edge x + y = 4 are continuous, so the closed-region
    convention used here only matters on that edge.
    """
    if x + y < 4 or x + y > 6 or x < 0 or y < 0:
        return 0.0
    if 3 * x + y >= 6 and 2 * x + y <= 6:
        return (3 * x + y - 6) / 2
    if 2 * x + y >= 6 and x + 2 * y >= 6:
        return (6 - x - y) / 2
    if x + 3 * y >= 6 and x + 2 * y <= 6:
        return (x + 3 * y - 6) / 2
    return 0.0


def _clip_polygon(
    poly: list[tuple[Fraction, Fraction]],
    axis: int,
    lo: Fraction,
    hi: Fraction,
) -> list[tuple[Fraction, Fraction]]:
    """Sutherland-Hodgman clip of a convex polygon to lo <= coord[axis] <= hi."""
    for bound, keep_ge in ((lo, True), (hi, False)):
        if not poly:
            return []
        out: list[tuple[Fraction, Fraction]] = []
        for k in range(len(poly)):
            cur, nxt = poly[k], poly[(k + 1) % len(poly)]
            cur_in = cur[axis] >= bound if keep_ge else cur[axis] <= bound
            nxt_in = nxt[axis] >= bound if keep_ge else nxt[axis] <= bound
            if cur_in:
                out.append(cur)
            if cur_in != nxt_in:
                frac = (bound - cur[axis]) / (nxt[axis] - cur[axis])
                pt = (
                    cur[0] + frac * (nxt[0] - cur[0]),
                    cur[1] + frac * (nxt[1] - cur[1]),
                )
                out.append(pt)
        poly = out
    return poly


def _integrate_linear_over_polygon(
    poly: list[tuple[Fraction, Fraction]],
    coeffs: tuple[Fraction, Fraction, Fraction],
) -> Fraction:
    """Exact integral of alpha*x + beta*y + gamma over a convex polygon."""
    alpha, beta, gamma = coeffs
    total = Fraction(0)
    for k in range(1, len(poly) - 1):
        (x0, y0), (x1, y1), (x2, y2) = poly[0], poly[k], poly[k + 1]
        twice_area = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
        area = abs(twice_area) / 2
        cx = (x0 + x1 + x2) / 3
        cy = (y0 + y1 + y2) / 3
        total += area * (alpha * cx + beta * cy + gamma)
    return total


def density_n4_total_integral() -> Fraction:
    """Exact integral of the height-4 density over the plane."""
    return sum(
        (_integrate_linear_over_polygon(tri, coeffs) for tri, coeffs in _DENSITY_N4_TRIANGLES),
        start=Fraction(0),
    )


def density_n4_cell_integrals(
    resolution: tuple[int, int] = (60, 60),
    bounds: tuple[Fraction, Fraction, Fraction, Fraction] | None = None,
) -> Histogram2D:
    """Exact per-cell integrals of the height-4 density, as a histogram."""
    if bounds is None:
        bounds = default_bounds(4)
    x_lo, x_hi, y_lo, y_hi = (Fraction(v) for v in bounds)
    cx, cy = resolution
    dx = (x_hi - x_lo) / cx
    dy = (y_hi - y_lo) / cy
    cells = np.zeros(resolution)
    total = Fraction(0)
    for tri, coeffs in _DENSITY_N4_TRIANGLES:
        txs = [p[0] for p in tri]
        tys = [p[1] for p in tri]
        i_min = max(int((min(txs) - x_lo) / dx), 0)
        i_max = min(int((max(txs) - x_lo) / dx) + 1, cx)
        j_min = max(int((min(tys) - y_lo) / dy), 0)
        j_max = min(int((max(tys) - y_lo) / dy) + 1, cy)
        for i in range(i_min, i_max):
            col = _clip_polygon(tri, 0, x_lo + i * dx, x_lo + (i + 1) * dx)
            if not col:
                continue
            for j in range(j_min, j_max):
                cell_poly = _clip_polygon(col, 1, y_lo + j * dy, y_lo + (j + 1) * dy)
                if len(cell_poly) >= 3:
                    val = _integrate_linear_over_polygon(cell_poly, coeffs)
                    cells[i, j] += float(val)
                    total += val
    return Histogram2D(
        bounds=(x_lo, x_hi, y_lo, y_hi),
        resolution=resolution,
        cells=cells,
        total_weight=float(total),
    )


# ---------------------------------------------------------------------------
# Experiment drivers.


def convergence_report(
    n: int,
    m_list: Sequence[int],
    resolution: tuple[int, int] = (60, 60),
    mc_count: int = 1_000_000,
    seed: int = 0,
    budget: int | None = None,
) -> dict:
    """L1 distance of binned normalized discrete measures to the continuous
    pushforward, for each m, plus the exact total-weight sequence."""
    from .qtpoly import qt_catalan_dinv_area, to_normalized_measure

    if not m_list:
        raise ValueError("m_list must be nonempty")
    if budget is not None:
        for m in m_list:
            expected = catalan_number_m(n, m)
            if expected > budget:
                raise BudgetExceededError(
                    f"(n={n}, m={m}) needs {expected} paths, budget is {budget}"
                )
    total_weights = [Fraction(catalan_number_m(n, m), m ** (n - 1)) for m in m_list]
    if n == 1:
        return {
            "n": n,
            "m_list": list(m_list),
            "seed": seed,
            "grid": list(resolution),
            "distances": [0.0 for _ in m_list],
            "total_weights": [str(w) for w in total_weights],
            "limit_weight": str(polytope_volume(n)),
        }
    bounds = default_bounds(n)
    if n == 4:
        reference = density_n4_cell_integrals(resolution, bounds)
    else:
        batch = sample_area_polytope(n, mc_count, seed)
        reference = pushforward_histogram(batch, "dinv-area", resolution, bounds)
    distances = []
    for m in m_list:
        poly = qt_catalan_dinv_area(n, m, budget=budget)
        binned = bin_discrete_measure(to_normalized_measure(poly, n, m), resolution, bounds)
        distances.append(l1_distance(binned, reference))
    return {
        "n": n,
        "m_list": list(m_list),
        "seed": seed,
        "grid": list(resolution),
        "distances": distances,
        "total_weights": [str(w) for w in total_weights],
        "limit_weight": str(polytope_volume(n)),
    }


def measure_preservation_check(
    n: int,
    count: int = 1_000_000,
    seed: int = 0,
    resolution: int = 10,
) -> dict:
    """Empirical invariance of the uniform measure under the sorting
    transform.

    Two independent substreams are drawn from the seed; one batch is pushed
    through the transform, and both are histogrammed over the bounding box of
    the polytope in area coordinates.  Per-cell z-scores use the two-sample
    binomial noise floor sqrt(c1 + c2).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    seq = np.random.SeedSequence(seed)
    rng_direct, rng_transported = (np.random.default_rng(s) for s in seq.spawn(2))
    direct = sample_area_polytope(n, count, seed, rng=rng_direct)
    source = sample_area_polytope(n, count, seed, rng=rng_transported)
    transported = batch_transform_T(source.points)

    edges = [np.linspace(0.0, float(i), resolution + 1) for i in range(1, n)]
    c_direct, _ = np.histogramdd(direct.points[:, 1:], bins=edges)
    c_trans, _ = np.histogramdd(transported[:, 1:], bins=edges)
    occupied = (c_direct + c_trans) > 0
    z = np.zeros_like(c_direct)
    z[occupied] = (c_direct[occupied] - c_trans[occupied]) / np.sqrt(
        c_direct[occupied] + c_trans[occupied]
    )
    vol = polytope_volume(n)
    weight = float(vol) / count
    aggregate_l1 = float(np.abs(c_direct - c_trans).sum()) * weight
    return {
        "n": n,
        "count": count,
        "seed": seed,
        "resolution": resolution,
        "volume": str(vol),
        "aggregate_l1": aggregate_l1,
        "l1_budget": 0.03 * float(vol),
        "max_abs_z": float(np.abs(z).max()),
        "frac_cells_z_gt3": float((np.abs(z) > 3).sum() / max(occupied.sum(), 1)),
        "ok": aggregate_l1 <= 0.03 * float(vol),
    }
