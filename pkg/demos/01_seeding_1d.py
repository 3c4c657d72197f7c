"""Seeding k centers on a line in expected O(n log n) time.

The textbook k-means++ seeder refreshes every point's distance after
each new center, which costs O(nk) even in one dimension.  On a line
that refresh is mostly wasted: a new center only improves the points
in one contiguous run around it.  The fast seeder keeps the current
power distances in a binary tree of partial sums, draws the next
center by walking a single uniform number down that tree, and then
shrinks just the affected run.

This script shows three things:

1. the fast and naive seeders return bit-identical results when fed
   the same random stream,
2. the total number of distance updates grows like n log n rather
   than n*k,
3. the wall-clock gap that follows from (2).
"""

import time

import numpy as np

from prone.seeding1d import seed_1d_fast, seed_1d_naive


def main() -> None:
    rng = np.random.default_rng(7)

    print("== 1. exact agreement with the naive seeder ==")
    xs = np.round(rng.normal(size=400), 2)  # rounding forces duplicates
    k = 32
    stream = 12345
    fast, stats = seed_1d_fast(xs, k, z=2.0, rng=np.random.default_rng(stream))
    naive = seed_1d_naive(xs, k, z=2.0, rng=np.random.default_rng(stream))
    print(f"  n={xs.size}, k={k}: centers equal: "
          f"{np.array_equal(fast.center_indices, naive.center_indices)}, "
          f"assignments equal: {np.array_equal(fast.assignment, naive.assignment)}")
    print(f"  first five centers (selection order): {fast.center_values[:5]}")

    print("\n== 2. update counts scale like n log n ==")
    print(f"  {'n':>8} {'k':>7} {'updates':>12} {'updates/(n ln n)':>18}")
    for exp in (10, 12, 14, 16):
        n = 2**exp
        pts = rng.random(n)
        _, s = seed_1d_fast(pts, n // 4, z=2.0, rng=np.random.default_rng(exp))
        ratio = s.total_updates / (n * np.log(n))
        print(f"  {n:>8} {n // 4:>7} {s.total_updates:>12} {ratio:>18.3f}")
    print("  (a naive refresh would need n*k updates, i.e. ratios in the")
    print("   hundreds; the tree keeps the ratio flat)")

    print("\n== 3. wall-clock comparison ==")
    n = 20_000
    pts = np.sort(rng.normal(size=n))
    for k in (64, 512, 4096):
        t0 = time.perf_counter()
        seed_1d_fast(pts, k, z=2.0, rng=np.random.default_rng(k))
        t_fast = time.perf_counter() - t0
        t0 = time.perf_counter()
        seed_1d_naive(pts, k, z=2.0, rng=np.random.default_rng(k))
        t_naive = time.perf_counter() - t0
        print(f"  n={n}, k={k:>4}: fast {t_fast * 1e3:7.1f} ms   "
              f"naive {t_naive * 1e3:7.1f} ms   ({t_naive / t_fast:5.1f}x)")


if __name__ == "__main__":
    main()
