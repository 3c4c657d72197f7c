"""d-dimensional (k,z) clustering primitives: costs, k-means++ and Lloyd.

Costs use Euclidean distances raised to the power z >= 1. Two evaluation
modes exist: against a fixed assignment, which is O(nnz + kd) and is the
primary reported cost, and against the nearest center, which is the
classical O(ndk) objective and is computed in chunks to bound memory.

``kmeanspp_seed`` is the standard powered-distance seeding, optionally
weighted (a weighted point set behaves like the multiset with that many
copies; the first center is drawn proportionally to weight). It consumes
randomness exactly like the 1-D seeders: one uniform integer (unweighted
first center), then one uniform real per subsequent center scaled by the
current total mass, so on sorted 1-D input with a shared generator it
reproduces ``seed_1d_naive`` draw for draw.

``lloyd_iterate`` is plain Lloyd for z = 2 with weighted variants for
coresets. Empty clusters are repaired by relocating the center to the
point farthest from its nearest surviving center, which keeps the cost
monotone non-increasing.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
import scipy.sparse as sp

from ._util import as_generator, padded_pairwise_sum
from .dataset import Dataset

__all__ = [
    "ClusteringModel",
    "cost_with_nearest",
    "cost_with_assignment",
    "pointwise_assignment_costs",
    "nearest_assignment",
    "kmeanspp_seed",
    "centers_of_mass",
    "lloyd_iterate",
]

_CHUNK = 65536


@dataclass(frozen=True)
class ClusteringModel:
    """Centers plus the assignment and cost they were evaluated with.

    ``cost`` is always recomputable from (centers, assignment, z) on the
    data the model was built from. ``assignment`` may be None for models
    whose full-data assignment is deliberately deferred.
    """

    centers: np.ndarray
    assignment: np.ndarray | None
    cost: float
    z: float

    @property
    def k(self) -> int:
        return int(self.centers.shape[0])


def _as_matrix(points):
    """Return (matrix, is_sparse) for a Dataset, ndarray, or CSR input."""
    if isinstance(points, Dataset):
        return points.points, points.is_sparse
    if sp.issparse(points):
        return points.tocsr(), True
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    return arr, False


def _row_sq_norms(mat, is_sparse) -> np.ndarray:
    if is_sparse:
        return np.asarray(mat.multiply(mat).sum(axis=1)).ravel()
    return np.einsum("ij,ij->i", mat, mat)


def _power_from_sq(d2: np.ndarray, z: float) -> np.ndarray:
    d2 = np.maximum(d2, 0.0)
    if z == 2:
        return d2
    if z == 1:
        return np.sqrt(d2)
    return d2 ** (z / 2.0)


def _check_centers(centers) -> np.ndarray:
    c = np.asarray(centers, dtype=np.float64)
    if c.ndim == 1:
        c = c[:, None]
    if c.ndim != 2 or c.shape[0] == 0:
        raise ValueError("centers must be a non-empty (k, d) array")
    if not np.isfinite(c).all():
        raise ValueError("centers must be finite")
    return c


def nearest_assignment(points, centers, chunk: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Nearest center per point: returns (assignment, squared distances)."""
    mat, sparse = _as_matrix(points)
    c = _check_centers(centers)
    n = mat.shape[0]
    if c.shape[1] != mat.shape[1]:
        raise ValueError("dimension mismatch between points and centers")
    if chunk is None:
        # cap the chunk x k distance block at ~16M doubles
        chunk = max(256, min(_CHUNK, 16_777_216 // c.shape[0]))
    cn = np.einsum("ij,ij->i", c, c)
    assignment = np.empty(n, dtype=np.intp)
    d2 = np.empty(n, dtype=np.float64)
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        block = mat[lo:hi]
        xn = _row_sq_norms(block, sparse)
        cross = block @ c.T
        if sparse:
            cross = np.asarray(cross)
        dist = xn[:, None] - 2.0 * cross + cn[None, :]
        idx = np.argmin(dist, axis=1)
        assignment[lo:hi] = idx
        if sparse:
            d2[lo:hi] = np.maximum(dist[np.arange(hi - lo), idx], 0.0)
        else:
            # recompute the winning distance by differencing: exact 0 when
            # a point coincides with its center, unlike the expanded form
            diff = block - c[idx]
            d2[lo:hi] = np.einsum("ij,ij->i", diff, diff)
    return assignment, d2


def cost_with_nearest(points, centers, z: float = 2.0, weights=None) -> float:
    """Sum of powered distances to each point's nearest center (O(ndk))."""
    _, d2 = nearest_assignment(points, centers)
    terms = _power_from_sq(d2, z)
    if weights is not None:
        terms = terms * np.asarray(weights, dtype=np.float64)
    return float(np.sum(terms))


def pointwise_assignment_costs(points, centers, assignment, z: float = 2.0) -> np.ndarray:
    """Powered distance of each point to its assigned center, O(nnz + kd).

    Groups points by cluster so each center is combined with its own rows
    only; never materializes an n x k distance matrix.
    """
    mat, sparse = _as_matrix(points)
    c = _check_centers(centers)
    sigma = np.asarray(assignment)
    n = mat.shape[0]
    if sigma.shape != (n,):
        raise ValueError("assignment must have one entry per point")
    if sigma.size and (sigma.min() < 0 or sigma.max() >= c.shape[0]):
        raise ValueError("assignment references a center outside [0, k)")
    order = np.argsort(sigma, kind="stable")
    sorted_sigma = sigma[order]
    boundaries = np.searchsorted(sorted_sigma, np.arange(c.shape[0] + 1))
    d2 = np.empty(n, dtype=np.float64)
    if sparse:
        xn = _row_sq_norms(mat, sparse)
        cn = np.einsum("ij,ij->i", c, c)
    for j in range(c.shape[0]):
        rows = order[boundaries[j] : boundaries[j + 1]]
        if rows.size == 0:
            continue
        if sparse:
            cross = np.asarray(mat[rows] @ c[j]).ravel()
            d2[rows] = np.maximum(xn[rows] - 2.0 * cross + cn[j], 0.0)
        else:
            diff = mat[rows] - c[j]
            d2[rows] = np.einsum("ij,ij->i", diff, diff)
    return _power_from_sq(d2, z)


def cost_with_assignment(points, centers, assignment, z: float = 2.0, weights=None) -> float:
    """Cost of a fixed assignment: sum of powered distances to assigned centers."""
    terms = pointwise_assignment_costs(points, centers, assignment, z)
    if weights is not None:
        terms = terms * np.asarray(weights, dtype=np.float64)
    return float(np.sum(terms))


def _sq_dists_to(mat, sparse, xn, center) -> np.ndarray:
    """Squared distances of all points to one center."""
    if sparse:
        cross = np.asarray(mat @ center).ravel()
        return np.maximum(xn - 2.0 * cross + center @ center, 0.0)
    diff = mat - center
    return np.einsum("ij,ij->i", diff, diff)


def kmeanspp_seed(points, k: int, z: float = 2.0, rng=None, weights=None) -> ClusteringModel:
    """Powered-distance (k-means++) seeding on points in R^d.

    Returns a model whose centers are data points, with the nearest-center
    assignment and cost implied by the final distance table. Stops early
    with fewer centers if the remaining mass is exhausted.
    """
    mat, sparse = _as_matrix(points)
    n, d = mat.shape
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must satisfy 1 <= k <= n={n}")
    if z < 1:
        raise ValueError(f"z={z} must be >= 1")
    w = None
    if weights is not None:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (n,):
            raise ValueError("weights must have one entry per point")
        if not np.isfinite(w).all() or (w < 0).any():
            raise ValueError("weights must be finite and nonnegative")
        if not w.sum() > 0:
            raise ValueError("weights must not all be zero")
    rng = as_generator(rng)
    xn = _row_sq_norms(mat, sparse)

    if w is None:
        first = int(rng.integers(n))
    else:
        r = rng.random() * padded_pairwise_sum(w)
        first = int(np.searchsorted(np.cumsum(w), r, side="right"))
        first = min(first, n - 1)
        while w[first] == 0.0:
            first -= 1

    take_row = (lambda i: np.asarray(mat[i].todense()).ravel()) if sparse else (lambda i: mat[i])
    d2 = _sq_dists_to(mat, sparse, xn, take_row(first))
    assignment = np.zeros(n, dtype=np.intp)
    chosen = [first]

    for t in range(1, k):
        masses = _power_from_sq(d2, z)
        if w is not None:
            masses = w * masses
        total = padded_pairwise_sum(masses)
        if not total > 0.0:
            break
        r = rng.random() * total
        idx = int(np.searchsorted(np.cumsum(masses), r, side="right"))
        if idx >= n:
            idx = n - 1
        while masses[idx] == 0.0:
            idx -= 1
        nd2 = _sq_dists_to(mat, sparse, xn, take_row(idx))
        closer = nd2 < d2
        d2[closer] = nd2[closer]
        assignment[closer] = t
        chosen.append(idx)

    if sparse:
        centers = np.asarray(mat[chosen].todense())
    else:
        centers = mat[np.asarray(chosen)]
    terms = _power_from_sq(d2, z)
    if w is not None:
        terms = terms * w
    return ClusteringModel(
        centers=np.array(centers, dtype=np.float64),
        assignment=assignment,
        cost=float(terms.sum()),
        z=z,
    )


def centers_of_mass(
    points, assignment, k: int, weights=None
) -> tuple[np.ndarray, np.ndarray]:
    """Per-cluster (weighted) means; empty clusters are flagged and repaired.

    Returns (centers, relocated) where ``relocated`` lists the cluster ids
    that had no members (or zero total weight) and were therefore placed on
    the point farthest from its nearest nonempty mean, farthest first.
    """
    mat, sparse = _as_matrix(points)
    sigma = np.asarray(assignment)
    n, d = mat.shape
    if sigma.shape != (n,):
        raise ValueError("assignment must have one entry per point")
    if k < 1:
        raise ValueError("k must be >= 1")
    if sigma.size and (sigma.min() < 0 or sigma.max() >= k):
        raise ValueError("assignment references a cluster outside [0, k)")
    if weights is None:
        wsum = np.bincount(sigma, minlength=k).astype(np.float64)
        if sparse:
            onehot = sp.csr_matrix(
                (np.ones(n), (sigma, np.arange(n))), shape=(k, n)
            )
            sums = np.asarray((onehot @ mat).todense())
        else:
            sums = np.empty((k, d), dtype=np.float64)
            for j in range(d):
                sums[:, j] = np.bincount(sigma, weights=mat[:, j], minlength=k)
    else:
        w = np.asarray(weights, dtype=np.float64)
        wsum = np.bincount(sigma, weights=w, minlength=k)
        if sparse:
            onehot = sp.csr_matrix((w, (sigma, np.arange(n))), shape=(k, n))
            sums = np.asarray((onehot @ mat).todense())
        else:
            sums = np.empty((k, d), dtype=np.float64)
            for j in range(d):
                sums[:, j] = np.bincount(sigma, weights=w * mat[:, j], minlength=k)

    nonempty = wsum > 0
    centers = np.zeros((k, d), dtype=np.float64)
    centers[nonempty] = sums[nonempty] / wsum[nonempty, None]
    relocated = np.flatnonzero(~nonempty)
    if relocated.size:
        if not nonempty.any():
            raise ValueError("every cluster is empty")
        _, d2 = nearest_assignment(points, centers[nonempty])
        far_order = np.argsort(d2)[::-1]
        for slot, cluster in enumerate(relocated):
            row = far_order[slot % far_order.size]
            centers[cluster] = (
                np.asarray(mat[row].todense()).ravel() if sparse else mat[row]
            )
    return centers, relocated


def lloyd_iterate(
    points,
    model: ClusteringModel,
    max_iters: int = 300,
    tol: float = 1e-4,
    weights=None,
    cost_trace: list | None = None,
) -> ClusteringModel:
    """Lloyd's algorithm (z = 2 only) from an initial model.

    Alternates nearest assignment and center-of-mass steps until the
    relative cost improvement drops below ``tol`` or ``max_iters`` passes.
    The cost sequence is non-increasing; pass a list as ``cost_trace`` to
    collect it.
    """
    if model.z != 2:
        raise ValueError("lloyd_iterate supports z=2 only")
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    w = None if weights is None else np.asarray(weights, dtype=np.float64)
    centers = np.array(model.centers, dtype=np.float64)
    k = centers.shape[0]
    assignment, d2 = nearest_assignment(points, centers)
    cost = float(np.sum(d2 if w is None else d2 * w))
    if cost_trace is not None:
        cost_trace.append(cost)
    for _ in range(max_iters):
        centers, _ = centers_of_mass(points, assignment, k, weights=w)
        assignment, d2 = nearest_assignment(points, centers)
        new_cost = float(np.sum(d2 if w is None else d2 * w))
        if cost_trace is not None:
            cost_trace.append(new_cost)
        if cost > 0 and (cost - new_cost) / cost < tol:
            cost = new_cost
            break
        cost = new_cost
        if cost == 0.0:
            break
    return replace(model, centers=centers, assignment=assignment, cost=cost)
