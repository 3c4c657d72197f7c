"""Weighted random sampling over a mutable array of nonnegative masses.

A complete binary tree stores the masses at its leaves (zero-padded to a
power of two) and every internal node holds the sum of its children. That
gives three operations:

* ``total``  - O(1), the root sum,
* ``find(r)`` - O(log n), the leaf holding the r-th unit of mass,
* ``update(a, start, stop)`` - refresh a contiguous leaf range, touching
  O((stop - start) + log n) nodes.

Internal sums are always recomputed from the two children rather than
adjusted incrementally, so the root equals the pairwise tree-order sum of
the current leaves bit for bit and no drift accumulates across updates.

``find`` descends with the strict rule "go left iff r < left-child sum".
Stored sums round, so the descent can overshoot by an ulp and land on a
zero-mass leaf; in that case it steps back to the previous positive leaf,
which keeps the result within one ulp of the exact prefix-sum boundary and
guarantees a zero-mass leaf is never returned.
"""

from __future__ import annotations

import numpy as np

__all__ = ["SamplingTree"]


class SamplingTree:
    """Complete binary tree over n nonnegative masses, externally 0-indexed."""

    def __init__(self, masses) -> None:
        a = np.asarray(masses, dtype=np.float64)
        if a.ndim != 1 or a.size == 0:
            raise ValueError("masses must be a non-empty 1-D array")
        if not np.isfinite(a).all():
            raise ValueError("masses must be finite")
        if (a < 0).any():
            raise ValueError("masses must be nonnegative")
        self._n = int(a.size)
        self._capacity = 1 << max(0, self._n - 1).bit_length()
        nodes = np.zeros(2 * self._capacity, dtype=np.float64)
        nodes[self._capacity : self._capacity + self._n] = a
        lo = self._capacity
        while lo > 1:
            lo >>= 1
            nodes[lo : 2 * lo] = nodes[2 * lo : 4 * lo : 2] + nodes[2 * lo + 1 : 4 * lo : 2]
        self._nodes = nodes
        # instrumentation: node writes performed by the latest update() call
        self.last_update_leaf_nodes = 0
        self.last_update_internal_nodes = 0

    def __len__(self) -> int:
        return self._n

    @property
    def capacity(self) -> int:
        return self._capacity

    @property
    def total(self) -> float:
        """Sum of all masses (the root node)."""
        return float(self._nodes[1])

    @property
    def masses(self) -> np.ndarray:
        """Copy of the current leaf masses."""
        return self._nodes[self._capacity : self._capacity + self._n].copy()

    def find(self, r: float) -> int:
        """Return the smallest index i with prefix_sum(i) > r.

        Requires 0 <= r < total and a positive total; never returns an
        index whose mass is zero.
        """
        nodes = self._nodes
        total = nodes[1]
        if not total > 0.0:
            raise ValueError("find() on a tree with zero total mass")
        if not (0.0 <= r < total):
            raise ValueError(f"r={r!r} outside [0, {total!r})")
        idx = 1
        cap = self._capacity
        while idx < cap:
            left = 2 * idx
            ls = nodes[left]
            if r < ls:
                idx = left
            else:
                r -= ls
                idx = left + 1
        leaf = idx - cap
        # rounding in stored sums can overshoot onto a zero leaf
        while nodes[cap + leaf] == 0.0:
            leaf -= 1
            if leaf < 0:
                raise AssertionError("positive total but no positive leaf found")
        return leaf

    def update(self, a, start: int, stop: int) -> None:
        """Refresh leaves [start, stop) from ``a``.

        ``a`` may be a full-length array aligned with the leaves (the slice
        [start:stop] is taken) or exactly the stop - start replacement values.
        Recomputes every ancestor of the changed leaves from its children.
        """
        if not (0 <= start < stop <= self._n):
            raise ValueError(f"range [{start}, {stop}) invalid for size {self._n}")
        vals = np.asarray(a, dtype=np.float64)
        if vals.ndim != 1 or vals.shape[0] not in (self._n, stop - start):
            raise ValueError(
                f"expected {self._n} (full) or {stop - start} (range) values, got shape {vals.shape}"
            )
        if vals.shape[0] == self._n:
            vals = vals[start:stop]
        if not np.isfinite(vals).all():
            raise ValueError("masses must be finite")
        if (vals < 0).any():
            raise ValueError("masses must be nonnegative")
        nodes = self._nodes
        lo = self._capacity + start
        hi = self._capacity + stop - 1
        nodes[lo : hi + 1] = vals
        self.last_update_leaf_nodes = stop - start
        internal = 0
        while lo > 1:
            lo >>= 1
            hi >>= 1
            nodes[lo : hi + 1] = nodes[2 * lo : 2 * hi + 2 : 2] + nodes[2 * lo + 1 : 2 * hi + 2 : 2]
            internal += hi - lo + 1
        self.last_update_internal_nodes = internal

    def check_consistency(self) -> None:
        """Assert every internal node equals the sum of its children (tests)."""
        nodes = self._nodes
        for idx in range(1, self._capacity):
            expect = nodes[2 * idx] + nodes[2 * idx + 1]
            if nodes[idx] != expect:
                raise AssertionError(f"node {idx}: stored {nodes[idx]!r} != children {expect!r}")
