"""Pure-numpy kernel implementations (fallback backend)."""

import numpy as np

_EPS = 1e-12


def average_ranks(x):
    """1-based ranks of a 1-D array; tied runs share their average rank."""
    x = np.asarray(x, dtype=np.float64)
    order = np.argsort(x, kind="stable")
    sx = x[order]
    new_run = np.r_[True, sx[1:] != sx[:-1]]
    run_id = np.cumsum(new_run) - 1
    counts = np.bincount(run_id)
    ends = np.cumsum(counts)
    avg = (ends - counts + 1 + ends) / 2.0
    ranks = np.empty(x.size)
    ranks[order] = avg[run_id]
    return ranks


def _pearson(a, b):
    a = a - a.mean()
    b = b - b.mean()
    denom = np.sqrt((a * a).sum() * (b * b).sum())
    if denom == 0.0:
        return np.nan
    return float(np.clip((a * b).sum() / denom, -1.0, 1.0))


def pairwise_complete_spearman(values):
    values = np.ascontiguousarray(values, dtype=np.float64)
    m, n = values.shape
    present = ~np.isnan(values)
    rho = np.full((n, n), np.nan)
    for j in range(n):
        col = values[present[:, j], j]
        if col.size >= 2 and col.min() < col.max():
            rho[j, j] = 1.0
    for j in range(n):
        for k in range(j + 1, n):
            common = present[:, j] & present[:, k]
            if common.sum() < 2:
                continue
            ra = average_ranks(values[common, j])
            rb = average_ranks(values[common, k])
            r = _pearson(ra, rb)
            rho[j, k] = rho[k, j] = r
    return rho


def two_opt_pass(order, d, lock_first=False, lock_last=False):
    n = len(order)
    gain = 0.0
    lo = 1 if lock_first else 0
    hi = n - 2 if lock_last else n - 1
    for i in range(lo, hi):
        for k in range(i + 1, hi + 1):
            if i == 0 and k == n - 1:
                continue  # full reversal never changes an open-path cost
            old = new = 0.0
            if i > 0:
                old += d[order[i - 1], order[i]]
                new += d[order[i - 1], order[k]]
            if k < n - 1:
                old += d[order[k], order[k + 1]]
                new += d[order[i], order[k + 1]]
            delta = new - old
            if delta < -_EPS:
                order[i : k + 1] = order[i : k + 1][::-1]
                gain -= delta
    return gain
