"""2D placement of dimension dots by classical multidimensional scaling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLayout
from .metrics import DistanceMatrix

MARGIN = 0.05  # dots live in [MARGIN, 1-MARGIN]^2


@dataclass(frozen=True)
class Layout2D:
    positions: dict[int, tuple[float, float]]  # dim id -> (x, y) in the unit square
    stress: float


def mds_embedding(d: np.ndarray) -> tuple[np.ndarray, float]:
    """Raw classical-MDS coordinates plus the normalized stress residual.

    Double-centers the squared distances and keeps the top-2 eigenpairs of
    the symmetric eigendecomposition; negative eigenvalues (non-Euclidean
    input) are clamped to zero, which the stress value then reports.
    """
    n = d.shape[0]
    sq = d * d
    row = sq.mean(axis=1)
    b = -0.5 * (sq - row[:, None] - row[None, :] + sq.mean())
    evals, evecs = np.linalg.eigh(b)
    top = np.argsort(evals)[::-1][:2]
    coords = evecs[:, top] * np.sqrt(np.clip(evals[top], 0.0, None))[None, :]

    # sign convention: flip each axis so its largest-|coordinate| entry is positive
    for axis in range(coords.shape[1]):
        col = coords[:, axis]
        pivot = int(np.argmax(np.abs(col)))
        if col[pivot] < 0:
            coords[:, axis] = -col

    diff = coords[:, None, :] - coords[None, :, :]
    emb = np.sqrt((diff * diff).sum(axis=2))
    iu = np.triu_indices(n, k=1)
    denom = (d[iu] ** 2).sum()
    stress = float(np.sqrt(((d[iu] - emb[iu]) ** 2).sum() / denom)) if denom > 0 else 0.0
    return coords, stress


def _to_unit_square(coords: np.ndarray) -> np.ndarray:
    lo = coords.min(axis=0)
    hi = coords.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1]))
    out = np.full_like(coords, 0.5)
    if span > 0:
        scale = (1.0 - 2 * MARGIN) / span
        center = (lo + hi) / 2.0
        out = (coords - center) * scale + 0.5
    return out


def classical_mds(dm: DistanceMatrix, dims) -> Layout2D:
    """Layout2D for the given visible dims from their pairwise distances.

    Undefined entries between otherwise-usable dims (possible under
    extreme missing-data patterns) are imputed with the mean defined
    distance so the eigensolver sees a complete matrix.
    """
    dims = sorted(dims)
    if len(dims) < 2:
        raise DegenerateLayout("layout needs at least 2 dims")
    d = dm.values[np.ix_(dims, dims)].copy()
    nan = np.isnan(d)
    if nan.any():
        filler = float(np.nanmean(d)) if not np.isnan(d).all() else 0.0
        d[nan] = filler
    coords, stress = mds_embedding(d)
    unit = _to_unit_square(coords)
    positions = {
        dim: (float(unit[i, 0]), float(unit[i, 1])) for i, dim in enumerate(dims)
    }
    return Layout2D(positions=positions, stress=stress)
