"""k-means polyline coloring for datasets without a categorical selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, normalize_column
from .errors import InvalidK

DEFAULT_K = 4


@dataclass(frozen=True)
class ClusterAssignment:
    k: int
    labels: np.ndarray  # (m,) cluster index per item
    centroids: np.ndarray  # (k, n) in [0, 1]^n
    inertia: float
    seed: int


def normalized_feature_block(dataset: Dataset) -> tuple[np.ndarray, tuple[int, ...]]:
    """Normalized values of all non-constant numeric dims, mean-imputed.

    Missing cells are replaced by the dim's mean normalized value so the
    item still participates in clustering; the imputation is local to this
    feature block and never leaks back into the dataset.
    """
    cols = []
    ids = []
    for meta in dataset.numeric_dims:
        if meta.constant:
            continue
        col = normalize_column(meta, dataset.numeric[:, meta.id])
        missing = np.isnan(col)
        if missing.any():
            col = col.copy()
            col[missing] = col[~missing].mean()
        cols.append(col)
        ids.append(meta.id)
    if not cols:
        return np.zeros((dataset.m, 0)), ()
    return np.column_stack(cols), tuple(ids)


def _squared_distances(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    d2 = (
        (x * x).sum(axis=1)[:, None]
        + (centroids * centroids).sum(axis=1)[None, :]
        - 2.0 * (x @ centroids.T)
    )
    return np.maximum(d2, 0.0)


def _plus_plus_init(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    m = x.shape[0]
    centroids = np.empty((k, x.shape[1]))
    centroids[0] = x[rng.integers(m)]
    for i in range(1, k):
        d2 = _squared_distances(x, centroids[:i]).min(axis=1)
        total = d2.sum()
        if total == 0.0:
            idx = int(rng.integers(m))  # all points coincide with a centroid
        else:
            idx = int(rng.choice(m, p=d2 / total))
        centroids[i] = x[idx]
    return centroids


def kmeans(x: np.ndarray, k: int, seed: int = 0, max_iter: int = 300,
           tol: float = 1e-6) -> ClusterAssignment:
    """Lloyd's algorithm with k-means++ seeding, deterministic per seed.

    Empty clusters are re-seeded with the point farthest from its current
    centroid. Iteration stops when the largest centroid shift drops below
    `tol`. The within-cluster inertia is checked to be non-increasing
    across iterations.
    """
    x = np.asarray(x, dtype=np.float64)
    m = x.shape[0]
    if k < 1 or k > m:
        raise InvalidK(f"k must be in [1, {m}], got {k}")
    rng = np.random.default_rng(seed)
    centroids = _plus_plus_init(x, k, rng)

    labels = np.zeros(m, dtype=np.int64)
    prev_inertia = np.inf
    for _ in range(max_iter):
        d2 = _squared_distances(x, centroids)
        labels = d2.argmin(axis=1)
        inertia = float(d2[np.arange(m), labels].sum())
        assert inertia <= prev_inertia + 1e-9 * max(1.0, prev_inertia), (
            "k-means inertia increased between iterations"
        )
        prev_inertia = inertia

        new_centroids = centroids.copy()
        for c in range(k):
            members = labels == c
            if members.any():
                new_centroids[c] = x[members].mean(axis=0)
        empties = [c for c in range(k) if not (labels == c).any()]
        if empties:
            dist_to_own = d2[np.arange(m), labels]
            order = np.argsort(dist_to_own)[::-1]
            for rank, c in enumerate(empties):
                idx = order[rank]
                new_centroids[c] = x[idx]

        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        if shift < tol:
            break

    d2 = _squared_distances(x, centroids)
    labels = d2.argmin(axis=1)
    inertia = float(d2[np.arange(m), labels].sum())
    return ClusterAssignment(k=k, labels=labels, centroids=centroids, inertia=inertia, seed=seed)
