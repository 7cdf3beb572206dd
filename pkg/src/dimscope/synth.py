"""Synthetic dataset builders used by tests, benchmarks, and demos.

The original case-study tables are not redistributable, so scale and
structure checks run against generated analogs: groups of dimensions
driven by a shared latent variable plus independent filler dims.
"""

from __future__ import annotations

import numpy as np

from .dataset import CategoricalDimMeta, Dataset, NumericDimMeta


def dataset_from_arrays(name: str, numeric: np.ndarray, numeric_labels=None,
                        categorical: dict[str, list] | None = None) -> Dataset:
    """Assemble a Dataset directly from in-memory columns."""
    numeric = np.asarray(numeric, dtype=np.float64)
    m, n_v = numeric.shape
    if numeric_labels is None:
        numeric_labels = [f"v{j}" for j in range(n_v)]
    dims = []
    for j in range(n_v):
        col = numeric[:, j]
        present = col[~np.isnan(col)]
        dims.append(
            NumericDimMeta(
                id=j,
                label=numeric_labels[j],
                vmin=float(present.min()) if present.size else float("nan"),
                vmax=float(present.max()) if present.size else float("nan"),
                missing_count=int(m - present.size),
            )
        )
    cat_cols = []
    cat_dims = []
    for k, (label, values) in enumerate((categorical or {}).items()):
        col = tuple(values)
        if len(col) != m:
            raise ValueError(f"categorical column {label!r} has wrong length")
        order: dict[str, int] = {}
        for v in col:
            if v is not None:
                order[v] = order.get(v, 0) + 1
        cat_cols.append(col)
        cat_dims.append(
            CategoricalDimMeta(
                id=k, label=label, values=tuple(order.keys()), counts=tuple(order.values())
            )
        )
    return Dataset(
        name=name,
        numeric=numeric,
        categorical=tuple(cat_cols),
        numeric_dims=tuple(dims),
        categorical_dims=tuple(cat_dims),
    )


def grouped_dataset(m: int, group_sizes, noise: float = 0.25, seed: int = 0,
                    n_independent: int = 0, flip_signs: bool = True,
                    categorical: dict[str, list] | None = None,
                    name: str = "synthetic") -> Dataset:
    """Dims in the same group share a latent driver (high |rho| within,
    near-zero across); independent filler dims are appended after."""
    rng = np.random.default_rng(seed)
    cols = []
    for g, size in enumerate(group_sizes):
        latent = rng.standard_normal(m)
        for i in range(size):
            sign = -1.0 if (flip_signs and i % 2 == 1) else 1.0
            cols.append(sign * latent + noise * rng.standard_normal(m))
    for _ in range(n_independent):
        cols.append(rng.standard_normal(m))
    numeric = np.column_stack(cols)
    return dataset_from_arrays(name, numeric, categorical=categorical)


def two_pair_fixture(m: int = 40, seed: int = 7) -> Dataset:
    """4 numeric dims forming two perfectly correlated pairs plus a label.

    Pair (0, 1) is positively correlated, pair (2, 3) negatively; under
    the absolute metric both pairs have distance 0 while cross-pair
    distances sit near 1, so d_select = 0.5 yields exactly two panels.
    """
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(m)
    b = rng.standard_normal(m)
    numeric = np.column_stack([a, 2.0 * a + 1.0, b, -b])
    labels = ["low" if v < 0 else "high" for v in a]
    return dataset_from_arrays(
        "two-pair-fixture",
        numeric,
        numeric_labels=["x_base", "x_scaled", "y_base", "y_flipped"],
        categorical={"band": labels},
    )


def scale_fixture(n_dims: int = 948, m: int = 933, n_groups: int = 12,
                  group_size: int = 4, noise: float = 0.2, seed: int = 42) -> Dataset:
    """Dataset at the large case-study scale: planted correlated groups
    inside mostly-independent dims, plus two categorical columns."""
    n_grouped = n_groups * group_size
    if n_grouped > n_dims:
        raise ValueError("groups do not fit into the requested dim count")
    rng = np.random.default_rng(seed)
    labels_a = [str(rng.integers(4)) for _ in range(m)]
    labels_b = ["yes" if rng.random() < 0.5 else "no" for _ in range(m)]
    ds = grouped_dataset(
        m,
        [group_size] * n_groups,
        noise=noise,
        seed=seed,
        n_independent=n_dims - n_grouped,
        categorical={"annotation": labels_a, "flag": labels_b},
        name="scale-fixture",
    )
    return ds
