"""Point-set container, file formats, and synthetic generators.

A :class:`Dataset` wraps n points in R^d stored either as a dense float64
matrix or as a CSR sparse matrix. Loaders parse two text formats:

* dense CSV: one row per point, comma-separated floats, optional header;
* sparse: one row per point, whitespace-separated ``index:value`` pairs
  with strictly increasing 0-based indices, optionally preceded by a
  ``#d <int>`` line declaring the dimension.

Parse errors name the offending line. Writing a dense dataset uses full
``repr`` precision so a round trip reproduces every finite double exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ._util import as_generator

__all__ = [
    "Dataset",
    "DatasetFormatError",
    "WeightedPoint",
    "as_dataset",
    "load_dense_csv",
    "load_sparse",
    "write_dense_csv",
    "gen_adversarial_gaussian",
    "gen_gaussian_mixture",
    "MIRROR_DISTANCE",
]

# Distance of each adversarial cluster center from the origin, in units of
# the (unit) cluster standard deviation. The construction only requires
# "far"; 1000 makes the mirrored clusters unambiguous for any sane seed.
MIRROR_DISTANCE = 1000.0


class DatasetFormatError(ValueError):
    """Raised for malformed dataset files; the message names the line."""


@dataclass(frozen=True)
class WeightedPoint:
    """A single point paired with a positive sampling weight."""

    point: np.ndarray
    weight: float


class Dataset:
    """Immutable set of n >= 1 points in R^d, dense or sparse rows."""

    __slots__ = ("_mat", "is_sparse")

    def __init__(self, mat) -> None:
        if sp.issparse(mat):
            m = mat.tocsr().astype(np.float64)
            m.sort_indices()
            if not np.isfinite(m.data).all():
                raise ValueError("points must be finite")
            self._mat = m
            self.is_sparse = True
        else:
            m = np.ascontiguousarray(mat, dtype=np.float64)
            if m.ndim != 2:
                raise ValueError("expected a 2-D array of points")
            if not np.isfinite(m).all():
                raise ValueError("points must be finite")
            m.setflags(write=False)
            self._mat = m
            self.is_sparse = False
        if self.n < 1 or self.d < 1:
            raise ValueError("dataset must have n >= 1 points and d >= 1 dimensions")

    @property
    def points(self):
        """The underlying (n, d) matrix: ndarray if dense, CSR if sparse."""
        return self._mat

    @property
    def n(self) -> int:
        return int(self._mat.shape[0])

    @property
    def d(self) -> int:
        return int(self._mat.shape[1])

    @property
    def nnz(self) -> int:
        """Stored entries: n*d for dense storage, stored nonzeros for sparse."""
        if self.is_sparse:
            return int(self._mat.nnz)
        return self.n * self.d

    def to_dense(self) -> np.ndarray:
        if self.is_sparse:
            return np.asarray(self._mat.todense())
        return np.asarray(self._mat)

    def __repr__(self) -> str:
        kind = "sparse" if self.is_sparse else "dense"
        return f"Dataset(n={self.n}, d={self.d}, {kind}, nnz={self.nnz})"


def as_dataset(data) -> Dataset:
    """Coerce an ndarray / sparse matrix / Dataset into a Dataset."""
    if isinstance(data, Dataset):
        return data
    return Dataset(data)


def load_dense_csv(path, has_header: bool = False) -> Dataset:
    """Load a dense CSV file of floats, one point per row."""
    rows: list[list[float]] = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if lineno == 1 and has_header:
                continue
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            if width is None:
                width = len(parts)
            elif len(parts) != width:
                raise DatasetFormatError(
                    f"{path}: line {lineno}: expected {width} fields, got {len(parts)}"
                )
            try:
                rows.append([float(p) for p in parts])
            except ValueError as exc:
                raise DatasetFormatError(f"{path}: line {lineno}: {exc}") from None
    if not rows:
        raise DatasetFormatError(f"{path}: no data rows")
    return Dataset(np.array(rows, dtype=np.float64))


def write_dense_csv(data: Dataset, path, header: list[str] | None = None) -> None:
    """Write a dense CSV with full round-trip precision (repr of each double)."""
    mat = data.to_dense()
    with open(path, "w", encoding="utf-8") as fh:
        if header is not None:
            fh.write(",".join(header) + "\n")
        for row in mat:
            fh.write(",".join(repr(v) for v in row.tolist()) + "\n")


def load_sparse(path) -> Dataset:
    """Load a sparse ``index:value`` file, one point per row."""
    declared_d = None
    indptr = [0]
    indices: list[int] = []
    values: list[float] = []
    max_idx = -1
    n = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if lineno == 1 and line.startswith("#d"):
                try:
                    declared_d = int(line.split()[1])
                except (IndexError, ValueError):
                    raise DatasetFormatError(f"{path}: line 1: malformed '#d' header") from None
                if declared_d < 1:
                    raise DatasetFormatError(f"{path}: line 1: dimension must be >= 1")
                continue
            if not line:
                continue
            prev = -1
            for tok in line.split():
                idx_s, _, val_s = tok.partition(":")
                if not _:
                    raise DatasetFormatError(
                        f"{path}: line {lineno}: expected 'index:value', got {tok!r}"
                    )
                try:
                    idx = int(idx_s)
                    val = float(val_s)
                except ValueError as exc:
                    raise DatasetFormatError(f"{path}: line {lineno}: {exc}") from None
                if idx < 0:
                    raise DatasetFormatError(f"{path}: line {lineno}: negative index {idx}")
                if idx <= prev:
                    raise DatasetFormatError(
                        f"{path}: line {lineno}: indices must be strictly increasing "
                        f"({idx} after {prev})"
                    )
                if declared_d is not None and idx >= declared_d:
                    raise DatasetFormatError(
                        f"{path}: line {lineno}: index {idx} outside declared dimension {declared_d}"
                    )
                prev = idx
                indices.append(idx)
                values.append(val)
            max_idx = max(max_idx, prev)
            indptr.append(len(indices))
            n += 1
    if n == 0:
        raise DatasetFormatError(f"{path}: no data rows")
    d = declared_d if declared_d is not None else max_idx + 1
    if d < 1:
        raise DatasetFormatError(f"{path}: cannot infer dimension (no entries and no '#d' header)")
    mat = sp.csr_matrix(
        (np.array(values, dtype=np.float64), np.array(indices, dtype=np.int64), np.array(indptr)),
        shape=(n, d),
    )
    return Dataset(mat)


def gen_adversarial_gaussian(m: int, rng=None) -> Dataset:
    """Mirrored Gaussian clusters plus a tiny origin cluster (d = 4).

    For each of the 4 axes, draws m unit-variance Gaussian points centered
    at +MIRROR_DISTANCE along that axis, then mirrors all 4m points through
    the origin and appends 5 exact origin points: n = 8m + 5. The mirror
    copies make the mean exactly zero and leave the origin cluster so small
    that uniform-flavored sampling schemes are likely to miss it.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    rng = as_generator(rng)
    d = 4
    blocks = []
    for axis in range(d):
        pts = rng.standard_normal((m, d))
        pts[:, axis] += MIRROR_DISTANCE
        blocks.append(pts)
    half = np.vstack(blocks)
    pts = np.vstack([half, -half, np.zeros((5, d))])
    return Dataset(pts)


def gen_gaussian_mixture(
    k: int, per_cluster: int, d: int, separation: float, rng=None
) -> tuple[Dataset, np.ndarray]:
    """Isotropic unit-variance Gaussian mixture with uniform random centers.

    Centers are drawn uniformly from [0, separation]^d, then each center
    gets ``per_cluster`` points of isotropic unit noise. Returns the
    dataset and the (k, d) ground-truth center matrix.
    """
    if k < 1 or per_cluster < 1 or d < 1:
        raise ValueError("k, per_cluster and d must all be >= 1")
    if separation < 0:
        raise ValueError("separation must be nonnegative")
    rng = as_generator(rng)
    centers = rng.uniform(0.0, separation, size=(k, d))
    noise = rng.standard_normal((k * per_cluster, d))
    pts = np.repeat(centers, per_cluster, axis=0) + noise
    return Dataset(pts), centers
