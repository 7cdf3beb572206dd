"""Dimension-to-dimension distances from Spearman rank correlation.

The pairwise distance matrix over all numeric dimensions is the expensive
offline step at high dimensionality, so it is computed once per dataset
and persisted to a cache file keyed by a dataset fingerprint. Two metrics
are supported: `literal` keeps the sign of the correlation (anticorrelated
dims are far apart), `abs` folds it (anticorrelated dims are close, the
default because PCPs show negative correlation just as clearly).
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .dataset import Dataset
from .errors import DegenerateDim, FingerprintMismatch, FormatError
from .kernels._numpy import average_ranks

CACHE_VERSION = 1


class DistanceMetric(str, Enum):
    """How a correlation rho maps to a distance."""

    ABSOLUTE = "abs"  # d = 1 - |rho|, range [0, 1]
    LITERAL = "literal"  # d = |1 - rho|, range [0, 2]

    @property
    def max_distance(self) -> float:
        return 1.0 if self is DistanceMetric.ABSOLUTE else 2.0

    def from_rho(self, rho):
        if self is DistanceMetric.ABSOLUTE:
            return 1.0 - np.abs(rho)
        return np.abs(1.0 - rho)


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric n_v x n_v distance matrix plus provenance.

    Entries are NaN for pairs involving a degenerate dimension (constant,
    or fewer than 2 usable values); the diagonal is 0 everywhere.
    """

    values: np.ndarray
    metric: DistanceMetric
    fingerprint: str
    defined: np.ndarray  # (n_v,) bool; False for degenerate dims

    @property
    def n_v(self) -> int:
        return self.values.shape[0]

    def defined_dims(self) -> tuple[int, ...]:
        return tuple(int(j) for j in np.flatnonzero(self.defined))


def rank_transform(values) -> np.ndarray:
    """Average ranks 1..m' over non-missing entries; NaN stays NaN."""
    values = np.asarray(values, dtype=np.float64)
    present = ~np.isnan(values)
    if present.sum() < 2:
        raise DegenerateDim("need at least 2 non-missing values to rank")
    out = np.full(values.shape, np.nan)
    out[present] = average_ranks(values[present])
    return out


def spearman(a, b) -> float:
    """Spearman rho of two value vectors over pairwise-complete items.

    Both vectors are re-ranked on the common non-missing index set before
    taking the Pearson correlation of the ranks.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError("vectors must have equal length")
    common = ~np.isnan(a) & ~np.isnan(b)
    if common.sum() < 2:
        raise DegenerateDim("fewer than 2 pairwise-complete items")
    ra = average_ranks(a[common])
    rb = average_ranks(b[common])
    if ra.min() == ra.max() or rb.min() == rb.max():
        raise DegenerateDim("rank vector is constant on the common index set")
    ra = ra - ra.mean()
    rb = rb - rb.mean()
    denom = np.sqrt((ra * ra).sum() * (rb * rb).sum())
    return float(np.clip((ra * rb).sum() / denom, -1.0, 1.0))


def _complete_case_rho(values: np.ndarray) -> np.ndarray:
    """All-pairs Spearman rho when no cell is missing: rank once, then BLAS."""
    m, n = values.shape
    ranks = np.empty_like(values)
    for j in range(n):
        ranks[:, j] = average_ranks(values[:, j])
    z = ranks - ranks.mean(axis=0)
    norms = np.sqrt((z * z).sum(axis=0))
    ok = norms > 0
    z[:, ok] /= norms[ok]
    rho = np.clip(z.T @ z, -1.0, 1.0)
    rho[~ok, :] = np.nan
    rho[:, ~ok] = np.nan
    return rho


def distance_matrix(dataset: Dataset, metric: DistanceMetric = DistanceMetric.ABSOLUTE) -> DistanceMatrix:
    """All-pairs dimension distances for a dataset under one metric.

    Complete data takes the rank-once + matrix-product path; data with
    missing cells falls back to the pairwise-complete kernel.
    """
    values = np.ascontiguousarray(dataset.numeric, dtype=np.float64)
    m, n = values.shape
    if m < 2:
        rho = np.full((n, n), np.nan)
    elif np.isnan(values).any():
        rho = kernels.pairwise_complete_spearman(values)
    else:
        rho = _complete_case_rho(values)

    d = metric.from_rho(rho)
    np.fill_diagonal(d, 0.0)
    defined = np.array([not np.isnan(rho[j, j]) for j in range(n)]) if m >= 2 else np.zeros(n, bool)
    return DistanceMatrix(
        values=d,
        metric=metric,
        fingerprint=dataset.fingerprint(),
        defined=defined,
    )


def _lower_triangle(values: np.ndarray) -> np.ndarray:
    n = values.shape[0]
    idx = np.tril_indices(n, k=-1)
    return values[idx]


def save_distance_cache(dm: DistanceMatrix, path) -> None:
    """Persist a distance matrix: versioned npz with the lower triangle."""
    meta = json.dumps(
        {
            "version": CACHE_VERSION,
            "fingerprint": dm.fingerprint,
            "metric": dm.metric.value,
            "n_v": dm.n_v,
        },
        sort_keys=True,
    )
    with open(path, "wb") as fh:
        np.savez(
            fh,
            meta=np.array(meta),
            tri=_lower_triangle(dm.values),
            defined=dm.defined,
        )


def load_distance_cache(path, dataset: Dataset) -> DistanceMatrix:
    """Load a cache and verify it was computed from exactly this dataset."""
    try:
        with open(path, "rb") as fh:
            payload = np.load(io.BytesIO(fh.read()), allow_pickle=False)
        meta = json.loads(str(payload["meta"][()]))
        tri = payload["tri"]
        defined = payload["defined"].astype(bool)
        version = meta["version"]
        n_v = int(meta["n_v"])
        metric = DistanceMetric(meta["metric"])
        fingerprint = meta["fingerprint"]
    except FileNotFoundError:
        raise
    except Exception as exc:
        raise FormatError(f"unreadable distance cache {path!r}: {exc}") from exc

    if version != CACHE_VERSION:
        raise FormatError(f"cache version {version} not supported (expected {CACHE_VERSION})")
    if tri.shape != (n_v * (n_v - 1) // 2,) or defined.shape != (n_v,):
        raise FormatError("cache arrays do not match the declared dimension count")
    if fingerprint != dataset.fingerprint():
        raise FingerprintMismatch(
            "distance cache was computed from different data; re-run precompute"
        )

    values = np.zeros((n_v, n_v))
    idx = np.tril_indices(n_v, k=-1)
    values[idx] = tri
    values[(idx[1], idx[0])] = tri
    return DistanceMatrix(values=values, metric=metric, fingerprint=fingerprint, defined=defined)
