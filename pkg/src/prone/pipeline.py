"""The projected clustering pipeline: project, seed in 1-D, lift.

``prone`` reduces the data to one dimension with a random direction, runs
the fast 1-D seeding there, and lifts the resulting partition back to R^d
by taking each part's center of mass. The reported cost is the cost of
that fixed partition, which is computable in O(nnz + n + kd); the
classical nearest-center cost is a separate, more expensive evaluation
(:func:`prone_center_cost`).

Everything is deterministic in (data, config): the config's seed drives a
single counter-based stream used for the direction and then the seeding.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ._util import as_generator
from .baseline import ClusteringModel, centers_of_mass, cost_with_assignment, cost_with_nearest
from .dataset import as_dataset
from .projection import ProjectionVector, sample_direction, project
from .seeding1d import Seeding1DResult, SeedingStats, seed_1d_fast

__all__ = ["ProneConfig", "ProneResult", "prone", "prone_center_cost"]


@dataclass(frozen=True)
class ProneConfig:
    """Parameters for one pipeline run."""

    k: int
    z: float = 2.0
    variant: str = "standard"
    seed: int | None = None
    collect_stats: bool = True


@dataclass(frozen=True)
class ProneResult:
    """Model, the projection that produced it, and instrumentation.

    ``exhausted`` is True when the 1-D seeding found fewer than k distinct
    centers; the model then simply carries k' < k clusters.
    """

    model: ClusteringModel
    projection: ProjectionVector
    seeding: Seeding1DResult
    seeding_stats: SeedingStats
    timings: dict = field(default_factory=dict)

    @property
    def exhausted(self) -> bool:
        return self.seeding.exhausted


def prone(data, cfg: ProneConfig, rng=None) -> ProneResult:
    """Run the projected pipeline; see the module docstring.

    ``rng`` overrides the config seed when a caller wants to embed the run
    in a larger stream (the boosted pipeline does this).
    """
    data = as_dataset(data)
    if not 1 <= cfg.k <= data.n:
        raise ValueError(f"k={cfg.k} must satisfy 1 <= k <= n={data.n}")
    gen = as_generator(rng) if rng is not None else as_generator(cfg.seed)

    t0 = time.perf_counter()
    vec = sample_direction(data, cfg.variant, gen, seed=cfg.seed)
    projected = project(data, vec)
    t1 = time.perf_counter()
    seeding, stats = seed_1d_fast(
        projected, cfg.k, cfg.z, gen, collect_stats=cfg.collect_stats
    )
    t2 = time.perf_counter()
    centers, _ = centers_of_mass(data, seeding.assignment, seeding.k_found)
    t3 = time.perf_counter()
    cost = cost_with_assignment(data, centers, seeding.assignment, cfg.z)
    t4 = time.perf_counter()

    model = ClusteringModel(
        centers=centers, assignment=seeding.assignment, cost=cost, z=cfg.z
    )
    timings = {
        "project": t1 - t0,
        "seed": t2 - t1,
        "lift": t3 - t2,
        "assign": t4 - t3,
    }
    return ProneResult(
        model=model,
        projection=vec,
        seeding=seeding,
        seeding_stats=stats,
        timings=timings,
    )


def prone_center_cost(data, result: ProneResult) -> float:
    """Nearest-center cost of the lifted centers on the full data (O(ndk))."""
    return cost_with_nearest(data, result.model.centers, result.model.z)
