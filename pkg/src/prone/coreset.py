"""Importance-sampled coresets and the boosted seeding pipeline.

A coreset here is s i.i.d. draws from a per-point probability vector, each
sampled point carrying weight 1/(s * p_i) so that weighted sums are
unbiased estimates of full-data sums (in particular clustering costs).

Two distributions are provided:

* sensitivity: p_i proportional to cost_i / total_cost + 1 / |cluster(i)|
  for an existing clustering (the two terms sum to 1 + k' analytically, so
  that is the normalizer);
* lightweight: p_i = 1/(2n) + ||x_i - mean||^2 / (2 * sum of squares),
  which needs no clustering but hedges only against the mean.

Sampling uses an alias table: O(n) build, O(1) per draw.

``boosted_prone`` chains the projected pipeline into a sensitivity
distribution, samples a coreset of ceil(alpha * n) points, and runs
weighted powered-distance seeding on it, giving k-means++-quality centers
in roughly projected-seeding time. The full-data assignment is left to
the caller (it is the expensive O(ndk) part and often unneeded).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from ._util import as_generator
from .baseline import (
    ClusteringModel,
    _power_from_sq,
    kmeanspp_seed,
    nearest_assignment,
    pointwise_assignment_costs,
)
from .dataset import Dataset, DatasetFormatError, as_dataset
from .pipeline import ProneConfig, ProneResult, prone

__all__ = [
    "SensitivityDistribution",
    "WeightedCoreset",
    "AliasTable",
    "sensitivity_distribution",
    "lightweight_distribution",
    "sample_coreset",
    "write_weighted_csv",
    "load_weighted_csv",
    "BoostedResult",
    "boosted_prone",
]


@dataclass(frozen=True)
class SensitivityDistribution:
    """Per-point sampling probabilities and the two terms they came from."""

    probabilities: np.ndarray
    cost_share: np.ndarray
    size_share: np.ndarray


@dataclass(frozen=True)
class WeightedCoreset:
    """Sampled points (dense rows), their weights, and source row indices."""

    points: np.ndarray
    weights: np.ndarray
    source_indices: np.ndarray

    @property
    def size(self) -> int:
        return int(self.weights.size)

    def __iter__(self):
        from .dataset import WeightedPoint

        for row, w in zip(self.points, self.weights):
            yield WeightedPoint(point=row, weight=float(w))


class AliasTable:
    """Walker/Vose alias structure for O(1) draws from a fixed distribution."""

    def __init__(self, probabilities) -> None:
        p = np.asarray(probabilities, dtype=np.float64)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probabilities must be a non-empty 1-D array")
        if not np.isfinite(p).all() or (p < 0).any():
            raise ValueError("probabilities must be finite and nonnegative")
        total = p.sum()
        if not total > 0:
            raise ValueError("probabilities must not all be zero")
        n = p.size
        scaled = p * (n / total)
        self.accept = np.ones(n, dtype=np.float64)
        self.alias = np.arange(n, dtype=np.intp)
        small = [i for i in range(n) if scaled[i] < 1.0]
        large = [i for i in range(n) if scaled[i] >= 1.0]
        while small and large:
            s = small.pop()
            l = large.pop()
            self.accept[s] = scaled[s]
            self.alias[s] = l
            scaled[l] = (scaled[l] + scaled[s]) - 1.0
            (small if scaled[l] < 1.0 else large).append(l)
        for rest in (large, small):
            for i in rest:
                self.accept[i] = 1.0

    def draw(self, rng, size: int) -> np.ndarray:
        """Draw ``size`` independent indices."""
        rng = as_generator(rng)
        cols = rng.integers(self.alias.size, size=size)
        us = rng.random(size)
        take_alias = us >= self.accept[cols]
        out = cols.copy()
        out[take_alias] = self.alias[cols[take_alias]]
        return out


def sensitivity_distribution(points, model: ClusteringModel) -> SensitivityDistribution:
    """Sampling distribution from a clustering: cost share plus size share.

    With per-point costs c_i and cluster sizes |X_j|, the unnormalized mass
    is c_i / sum(c) + 1 / |X_{sigma(i)}| (the first term vanishes when the
    clustering has zero cost). Masses sum to 1 + k' for k' nonempty
    clusters, so probabilities divide by that analytic total.
    """
    mat = as_dataset(points)
    if model.assignment is None:
        raise ValueError("model must carry an assignment")
    sigma = np.asarray(model.assignment)
    costs = pointwise_assignment_costs(mat, model.centers, sigma, model.z)
    total = float(costs.sum())
    sizes = np.bincount(sigma, minlength=model.k)
    k_nonempty = int((sizes > 0).sum())
    cost_share = costs / total if total > 0 else np.zeros_like(costs)
    size_share = 1.0 / sizes[sigma]
    normalizer = (1.0 if total > 0 else 0.0) + k_nonempty
    probs = (cost_share + size_share) / normalizer
    return SensitivityDistribution(
        probabilities=probs, cost_share=cost_share, size_share=size_share
    )


def lightweight_distribution(points) -> SensitivityDistribution:
    """Mean-based sampling distribution: 1/(2n) + d^2(x, mean)/(2 sum d^2).

    When every point equals the mean the distance term carries no mass and
    the distribution is plain uniform.
    """
    data = as_dataset(points)
    mat = data.points
    if data.is_sparse:
        mean = np.asarray(mat.mean(axis=0)).ravel()
        sq = np.asarray(mat.multiply(mat).sum(axis=1)).ravel()
        cross = np.asarray(mat @ mean).ravel()
        d2 = np.maximum(sq - 2.0 * cross + mean @ mean, 0.0)
    else:
        diff = mat - mat.mean(axis=0)
        d2 = np.einsum("ij,ij->i", diff, diff)
    total = float(d2.sum())
    n = data.n
    if total > 0:
        size_share = np.full(n, 1.0 / (2.0 * n))
        cost_share = d2 / (2.0 * total)
    else:
        size_share = np.full(n, 1.0 / n)
        cost_share = np.zeros(n)
    probs = size_share + cost_share
    return SensitivityDistribution(
        probabilities=probs, cost_share=cost_share, size_share=size_share
    )


def sample_coreset(points, dist: SensitivityDistribution, s: int, rng=None) -> WeightedCoreset:
    """Draw s points i.i.d. from ``dist``; weight each by 1/(s * p_i).

    The weight is the reciprocal of the *expected number of draws* of the
    point, which makes weighted sums unbiased (a plain reciprocal of the
    probability would bias them by a factor of s).
    """
    data = as_dataset(points)
    if s < 1:
        raise ValueError("coreset size must be >= 1")
    p = dist.probabilities
    if p.shape != (data.n,):
        raise ValueError("distribution length does not match the data")
    rng = as_generator(rng)
    idx = AliasTable(p).draw(rng, s)
    weights = 1.0 / (s * p[idx])
    if data.is_sparse:
        rows = np.asarray(data.points[idx].todense())
    else:
        rows = data.points[idx]
    return WeightedCoreset(
        points=np.array(rows, dtype=np.float64),
        weights=weights,
        source_indices=idx,
    )


def write_weighted_csv(coreset: WeightedCoreset, path) -> None:
    """Serialize a coreset as CSV with the weight in a leading column."""
    with open(path, "w", encoding="utf-8") as fh:
        for w, row in zip(coreset.weights, coreset.points):
            cells = [repr(float(w))] + [repr(v) for v in row.tolist()]
            fh.write(",".join(cells) + "\n")


def load_weighted_csv(path) -> WeightedCoreset:
    """Load a coreset written by :func:`write_weighted_csv`."""
    weights = []
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) < 2:
                raise DatasetFormatError(f"{path}: line {lineno}: need a weight and a point")
            if width is None:
                width = len(parts)
            elif len(parts) != width:
                raise DatasetFormatError(
                    f"{path}: line {lineno}: expected {width} fields, got {len(parts)}"
                )
            try:
                weights.append(float(parts[0]))
                rows.append([float(v) for v in parts[1:]])
            except ValueError as exc:
                raise DatasetFormatError(f"{path}: line {lineno}: {exc}") from None
    if not rows:
        raise DatasetFormatError(f"{path}: no data rows")
    return WeightedCoreset(
        points=np.array(rows, dtype=np.float64),
        weights=np.array(weights, dtype=np.float64),
        source_indices=np.full(len(rows), -1, dtype=np.intp),
    )


@dataclass(frozen=True)
class BoostedResult:
    """Output of the boosted pipeline.

    ``model``'s centers live in the full space but its assignment and cost
    refer to the weighted coreset the seeding ran on; call
    :meth:`evaluate` for the full-data nearest-center model.
    """

    model: ClusteringModel
    prone_result: ProneResult
    coreset: WeightedCoreset
    timings: dict

    def evaluate(self, points) -> ClusteringModel:
        """Nearest assignment and cost of the boosted centers on ``points``."""
        assignment, d2 = nearest_assignment(points, self.model.centers)
        cost = float(np.sum(_power_from_sq(d2, self.model.z)))
        return ClusteringModel(
            centers=self.model.centers,
            assignment=assignment,
            cost=cost,
            z=self.model.z,
        )


def boosted_prone(
    data,
    k: int,
    z: float = 2.0,
    alpha: float = 0.1,
    rng=None,
    variant: str = "standard",
) -> BoostedResult:
    """Projected seeding, sensitivity coreset, then weighted seeding on it.

    The coreset has s = ceil(alpha * n) points; alpha must satisfy
    ceil(alpha * n) >= k or there are not enough points to seed k centers.
    """
    data = as_dataset(data)
    s = math.ceil(alpha * data.n)
    if s < k:
        raise ValueError(
            f"alpha*n < k: coreset of ceil({alpha} * {data.n}) = {s} points "
            f"cannot seed k={k} centers"
        )
    rng = as_generator(rng)
    t0 = time.perf_counter()
    base = prone(data, ProneConfig(k=k, z=z, variant=variant), rng=rng)
    t1 = time.perf_counter()
    dist = sensitivity_distribution(data, base.model)
    coreset = sample_coreset(data, dist, s, rng)
    t2 = time.perf_counter()
    seeded = kmeanspp_seed(coreset.points, k, z, rng, weights=coreset.weights)
    t3 = time.perf_counter()
    timings = {
        "prone": t1 - t0,
        "coreset": t2 - t1,
        "weighted_seed": t3 - t2,
    }
    return BoostedResult(model=seeded, prone_result=base, coreset=coreset, timings=timings)
