"""Shared numeric helpers used across the seeding implementations.

The seeding routines promise a reproducibility contract: given the same
generator state they make exactly one uniform-integer draw for the first
center and one uniform real per later center, and they scale that real by
the current total mass. For two implementations to make bit-identical
decisions, the mass values and the total they are scaled by must also be
bit-identical, so the power transform and the total live here and are
shared by everything that samples proportionally to powered distances.
"""

from __future__ import annotations

import numpy as np

__all__ = ["as_generator", "power_abs", "padded_pairwise_sum"]


def as_generator(rng: np.random.Generator | int | None = None) -> np.random.Generator:
    """Coerce a seed (or None) into a counter-based numpy Generator.

    Callers own their randomness: passing an existing Generator uses it
    as-is, anything else seeds a fresh Philox stream.
    """
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.Generator(np.random.Philox(rng))


def power_abs(diff: np.ndarray, z: float) -> np.ndarray:
    """Elementwise |diff|**z with exact zeros and fast paths for z=1, 2.

    General z is evaluated as exp(z*ln|x|) so that every caller rounds the
    same way; |x| = 0 maps to 0 exactly (no log singularity).
    """
    ad = np.abs(np.asarray(diff, dtype=np.float64))
    if z == 1:
        return ad
    if z == 2:
        return ad * ad
    out = np.zeros_like(ad)
    nz = ad > 0
    out[nz] = np.exp(z * np.log(ad[nz]))
    return out


def padded_pairwise_sum(a: np.ndarray) -> float:
    """Sum a nonnegative 1-D array in complete-binary-tree order.

    Zero-pads to the next power of two and reduces adjacent pairs level by
    level, which is exactly how the sampling tree maintains its root sum.
    Sampling code that computes ``r = u * total`` uses this so that a plain
    array implementation and the tree-backed one see the same total.
    """
    buf = np.asarray(a, dtype=np.float64)
    if buf.size == 0:
        return 0.0
    m = 1 << max(0, buf.size - 1).bit_length()
    if buf.size != m:
        padded = np.zeros(m, dtype=np.float64)
        padded[: buf.size] = buf
        buf = padded
    while buf.size > 1:
        buf = buf[0::2] + buf[1::2]
    return float(buf[0])
