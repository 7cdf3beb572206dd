"""Axis ordering inside a PCP panel.

Minimizes the summed distance between adjacently drawn axes: open-path
tour built by nearest-neighbor construction and polished with 2-opt
sweeps. Merged panels are ordered segment by segment with the junction
dims pinned to the shared ends.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .metrics import DistanceMatrix

MAX_TWO_OPT_PASSES = 10_000


@dataclass(frozen=True)
class AxisOrder:
    dims: tuple[int, ...]
    cost: float


def path_cost(dims: tuple[int, ...], dm: DistanceMatrix) -> float:
    d = dm.values
    return float(sum(d[dims[i], dims[i + 1]] for i in range(len(dims) - 1)))


def _nearest_neighbor(dims, d, start, exclude_last=None) -> list[int]:
    remaining = set(dims) - {start}
    if exclude_last is not None:
        remaining.discard(exclude_last)
    order = [start]
    while remaining:
        cur = order[-1]
        best = min(remaining, key=lambda j: (d[cur, j], j))
        order.append(best)
        remaining.remove(best)
    if exclude_last is not None:
        order.append(exclude_last)
    return order


def order_axes(dims, dm: DistanceMatrix, pin_first: int | None = None,
               pin_last: int | None = None) -> AxisOrder:
    """Low-cost open path through a dim set.

    Starts from the dim with the smallest total distance to the rest
    (unless pinned), walks nearest-neighbor, then applies 2-opt until no
    segment reversal improves. Unpinned results are canonicalized so the
    first dim id is smaller than the last.
    """
    dims = sorted(dims)
    if len(dims) < 2:
        raise ValueError("axis ordering needs at least 2 dims")
    for pin in (pin_first, pin_last):
        if pin is not None and pin not in dims:
            raise ValueError(f"pinned dim {pin} is not a member of the panel")
    d = dm.values

    if pin_first is not None:
        start = pin_first
    else:
        pool = [j for j in dims if j != pin_last]
        start = min(pool, key=lambda j: (sum(d[j, k] for k in dims if k != j), j))
    order = np.asarray(
        _nearest_neighbor(dims, d, start, exclude_last=pin_last), dtype=np.int64
    )

    lock_first = pin_first is not None
    lock_last = pin_last is not None
    for _ in range(MAX_TWO_OPT_PASSES):
        if kernels.two_opt_pass(order, dm.values, lock_first, lock_last) == 0.0:
            break

    seq = tuple(int(j) for j in order)
    if not lock_first and not lock_last and seq[0] > seq[-1]:
        seq = seq[::-1]
    return AxisOrder(dims=seq, cost=path_cost(seq, dm))


def order_segments(segments, junctions, dm: DistanceMatrix) -> AxisOrder:
    """Axis order of a merged panel: each clique segment ordered around its
    pinned junction(s), concatenated with each junction appearing once."""
    if len(segments) == 1:
        return order_axes(segments[0], dm)
    seq: list[int] = []
    for i, seg in enumerate(segments):
        pin_f = junctions[i - 1] if i > 0 else None
        pin_l = junctions[i] if i < len(junctions) else None
        part = order_axes(seg, dm, pin_first=pin_f, pin_last=pin_l).dims
        seq.extend(part if i == 0 else part[1:])
    if seq[0] > seq[-1]:
        seq.reverse()
    out = tuple(seq)
    return AxisOrder(dims=out, cost=path_cost(out, dm))
