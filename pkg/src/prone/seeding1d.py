"""One-dimensional (k,z) seeding in expected O(n log n) time.

Both entry points sample k centers from n scalars with the classic
powered-distance seeding law: the first center is uniform, every later
center is drawn with probability proportional to min_c |x_i - c|^z over
the centers chosen so far.

``seed_1d_fast`` sorts the points once, keeps the powered distances in a
:class:`~prone.sampling_tree.SamplingTree`, and after each draw repairs the
distance array by scanning outward from the new center only while the new
center improves a point. On sorted points the improved region is one
contiguous interval, so a draw costs O(log n) for the tree lookup plus the
length of the interval, and the intervals sum to O(n log n) in expectation
over a whole run.

``seed_1d_naive`` recomputes all n distances after every draw (O(nk)). It
exists as an oracle: both functions consume randomness identically (one
uniform integer for the first center, then exactly one uniform real per
later center, scaled by the current total mass) and share the low-level
mass arithmetic, so with the same generator state they must return
identical centers and assignments, which the tests assert index for index.

If the remaining total mass hits zero before k draws (fewer than k
distinct values), both return k' < k centers and set ``exhausted``.

Centers are reported in selection order; assignments use ranks into that
list; exact midpoint ties go to the center on the right.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ._util import as_generator, padded_pairwise_sum, power_abs
from .sampling_tree import SamplingTree

__all__ = [
    "Seeding1DResult",
    "SeedingStats",
    "seed_1d_fast",
    "seed_1d_naive",
    "assign_to_sorted_centers",
]


@dataclass(frozen=True)
class Seeding1DResult:
    """Centers and per-point assignment produced by 1-D seeding.

    ``center_indices[j]`` is the position in the *original* input of the
    j-th center in selection order (the first entry is the uniform draw);
    ``assignment[i]`` is the rank j of the center point i belongs to.
    ``exhausted`` is True when fewer than the requested k distinct centers
    existed.
    """

    center_indices: np.ndarray
    center_values: np.ndarray
    assignment: np.ndarray
    exhausted: bool

    @property
    def k_found(self) -> int:
        return int(self.center_indices.size)


@dataclass
class SeedingStats:
    """Instrumentation for one fast-seeding run.

    ``total_updates`` counts distance-array writes made by the outward
    scans; ``comparisons`` counts scan loop-condition evaluations (each
    side evaluates once per write plus once to stop). ``wall_time`` is
    seconds for the whole call.
    """

    total_updates: int = 0
    comparisons: int = 0
    wall_time: float = 0.0


def _validate(points: np.ndarray, k: int, z: float) -> None:
    if points.ndim != 1 or points.size == 0:
        raise ValueError("points must be a non-empty 1-D array")
    if not np.isfinite(points).all():
        raise ValueError("points must be finite")
    if not 1 <= k <= points.size:
        raise ValueError(f"k={k} must satisfy 1 <= k <= n={points.size}")
    if z < 1:
        raise ValueError(f"z={z} must be >= 1")


def _scan_left(xs: np.ndarray, a: np.ndarray, center: int, z: float) -> tuple[int, int]:
    """Improve masses left of ``center``; return (lowest updated index, writes).

    Walks i = center-1, center-2, ... while |x_i - x_center|^z < a_i,
    overwriting a_i. Vectorized in geometrically growing blocks; the
    semantics match the scalar loop exactly because the power transform is
    monotone, so the first non-improving point ends the improved interval.
    """
    c = xs[center]
    i = center - 1
    block = 32
    writes = 0
    while i >= 0:
        lo = max(0, i - block + 1)
        vals = power_abs(xs[lo : i + 1] - c, z)
        improve = vals < a[lo : i + 1]
        from_right = improve[::-1]
        if from_right.all():
            a[lo : i + 1] = vals
            writes += i + 1 - lo
            i = lo - 1
            block <<= 1
        else:
            run = int(np.argmin(from_right))  # improving run length at the right edge
            if run:
                a[i - run + 1 : i + 1] = vals[vals.size - run :]
                writes += run
            i -= run
            break
    return i + 1, writes


def _scan_right(xs: np.ndarray, a: np.ndarray, center: int, z: float) -> tuple[int, int]:
    """Mirror image of :func:`_scan_left`; returns (highest updated index, writes)."""
    n = xs.size
    c = xs[center]
    j = center + 1
    block = 32
    writes = 0
    while j < n:
        hi = min(n, j + block)
        vals = power_abs(xs[j:hi] - c, z)
        improve = vals < a[j:hi]
        if improve.all():
            a[j:hi] = vals
            writes += hi - j
            j = hi
            block <<= 1
        else:
            run = int(np.argmin(improve))
            if run:
                a[j : j + run] = vals[:run]
                writes += run
            j += run
            break
    return j - 1, writes


def seed_1d_fast(
    points, k: int, z: float = 2.0, rng=None, collect_stats: bool = True
) -> tuple[Seeding1DResult, SeedingStats]:
    """Tree-backed 1-D seeding in expected O(n log n) total work."""
    t0 = time.perf_counter()
    xs_in = np.asarray(points, dtype=np.float64)
    _validate(xs_in, k, z)
    rng = as_generator(rng)
    n = xs_in.size

    order = np.argsort(xs_in, kind="stable")
    xs = xs_in[order]

    first = int(rng.integers(n))
    a = power_abs(xs - xs[first], z)
    a[first] = 0.0
    tree = SamplingTree(a)
    chosen = [first]
    stats = SeedingStats()
    exhausted = False

    for _ in range(k - 1):
        total = tree.total
        if not total > 0.0:
            exhausted = True
            break
        r = rng.random() * total
        if r >= total:  # u close to 1 can round u*total up to total
            r = np.nextafter(total, 0.0)
        lt = tree.find(r)
        a[lt] = 0.0
        lo, w_left = _scan_left(xs, a, lt, z)
        hi, w_right = _scan_right(xs, a, lt, z)
        tree.update(a, lo, hi + 1)
        chosen.append(lt)
        if collect_stats:
            stats.total_updates += w_left + w_right
            stats.comparisons += w_left + w_right + 2

    chosen_arr = np.array(chosen, dtype=np.intp)
    sort_perm = np.argsort(chosen_arr)
    sigma_sorted = assign_to_sorted_centers(xs, xs[chosen_arr[sort_perm]])
    assignment = np.empty(n, dtype=np.intp)
    assignment[order] = sort_perm[sigma_sorted]  # sorted rank -> selection rank
    result = Seeding1DResult(
        center_indices=order[chosen_arr],
        center_values=xs[chosen_arr],
        assignment=assignment,
        exhausted=exhausted,
    )
    stats.wall_time = time.perf_counter() - t0
    return result, stats


def seed_1d_naive(points, k: int, z: float = 2.0, rng=None) -> Seeding1DResult:
    """Reference 1-D seeding with a full O(n) distance refresh per draw.

    Same sampling semantics and randomness consumption as
    :func:`seed_1d_fast`; selection is a linear prefix-sum scan and the
    assignment is a brute-force nearest-center search with midpoint ties
    going right.
    """
    xs_in = np.asarray(points, dtype=np.float64)
    _validate(xs_in, k, z)
    rng = as_generator(rng)
    n = xs_in.size

    order = np.argsort(xs_in, kind="stable")
    xs = xs_in[order]

    first = int(rng.integers(n))
    a = power_abs(xs - xs[first], z)
    a[first] = 0.0
    chosen = [first]
    exhausted = False

    for _ in range(k - 1):
        total = padded_pairwise_sum(a)
        if not total > 0.0:
            exhausted = True
            break
        r = rng.random() * total
        prefix = np.cumsum(a)
        lt = int(np.searchsorted(prefix, r, side="right"))
        if lt >= n:  # r within an ulp of the total
            lt = n - 1
        while a[lt] == 0.0:
            lt -= 1
        a = np.minimum(a, power_abs(xs - xs[lt], z))
        chosen.append(lt)

    chosen_arr = np.array(chosen, dtype=np.intp)
    sort_perm = np.argsort(chosen_arr)
    cvals_sorted = xs[chosen_arr[sort_perm]]
    # nearest center per point, ties resolved toward the later center
    dists = np.abs(xs[:, None] - cvals_sorted[None, :])
    sigma_sorted = (cvals_sorted.size - 1) - np.argmin(dists[:, ::-1], axis=1)
    assignment = np.empty(n, dtype=np.intp)
    assignment[order] = sort_perm[sigma_sorted]
    return Seeding1DResult(
        center_indices=order[chosen_arr],
        center_values=xs[chosen_arr],
        assignment=assignment,
        exhausted=exhausted,
    )


def assign_to_sorted_centers(points_sorted, centers_sorted) -> np.ndarray:
    """Assign ascending points to ascending centers by a two-pointer merge.

    Returns ranks into ``centers_sorted``. The center pointer advances
    while the next center is at least as close, so a point exactly halfway
    between two centers goes to the right one. O(n + k).
    """
    pts = np.asarray(points_sorted, dtype=np.float64)
    cts = np.asarray(centers_sorted, dtype=np.float64)
    if pts.ndim != 1 or cts.ndim != 1:
        raise ValueError("expected 1-D arrays")
    if cts.size == 0:
        raise ValueError("at least one center required")
    if pts.size and np.any(np.diff(pts) < 0):
        raise ValueError("points must be in ascending order")
    if np.any(np.diff(cts) < 0):
        raise ValueError("centers must be in ascending order")
    sigma = np.empty(pts.size, dtype=np.intp)
    xs = pts.tolist()
    cs = cts.tolist()
    kk = len(cs)
    j = 0
    for i, xi in enumerate(xs):
        while j + 1 < kk and abs(xi - cs[j]) >= abs(xi - cs[j + 1]):
            j += 1
        sigma[i] = j
    return sigma
