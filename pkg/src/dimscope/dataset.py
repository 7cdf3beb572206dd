"""Tabular data model: CSV ingestion, normalization, equal-width binning.

A loaded table is held column-wise: one float64 matrix for the numeric
dimensions (NaN marks a missing cell) and one list of string columns for
the categorical dimensions (None marks a missing cell). Datasets are
immutable after load and safe to share across threads.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, SchemaError

DEFAULT_BIN_COUNT = 8
MIN_BIN_COUNT = 2
MAX_BIN_COUNT = 64


@dataclass(frozen=True)
class NumericDimMeta:
    """Per-column metadata for a numeric dimension."""

    id: int
    label: str
    vmin: float
    vmax: float
    missing_count: int

    @property
    def constant(self) -> bool:
        # all-missing columns have NaN bounds and count as constant
        return not (self.vmin < self.vmax)


@dataclass(frozen=True)
class CategoricalDimMeta:
    """Per-column metadata for a categorical dimension."""

    id: int
    label: str
    values: tuple[str, ...]
    counts: tuple[int, ...]


@dataclass(frozen=True)
class BinningSpec:
    """Equal-width binning of every numeric dimension into `bin_count` bins."""

    bin_count: int = DEFAULT_BIN_COUNT

    def __post_init__(self):
        if not (MIN_BIN_COUNT <= self.bin_count <= MAX_BIN_COUNT):
            raise ValueError(
                f"bin_count must be in [{MIN_BIN_COUNT}, {MAX_BIN_COUNT}], got {self.bin_count}"
            )

    def width(self, dim: NumericDimMeta) -> float:
        """Bin width for one dimension (0.0 for constant dims)."""
        if dim.constant:
            return 0.0
        return (dim.vmax - dim.vmin) / self.bin_count


@dataclass(frozen=True)
class Dataset:
    """Immutable canonical dataset: m items over numeric + categorical dims."""

    name: str
    numeric: np.ndarray  # (m, n_v) float64, NaN = missing
    categorical: tuple[tuple[str | None, ...], ...]  # n_c columns of length m
    numeric_dims: tuple[NumericDimMeta, ...]
    categorical_dims: tuple[CategoricalDimMeta, ...]

    @property
    def m(self) -> int:
        return self.numeric.shape[0]

    @property
    def n_v(self) -> int:
        return self.numeric.shape[1]

    @property
    def n_c(self) -> int:
        return len(self.categorical_dims)

    def column(self, dim_id: int) -> np.ndarray:
        """Raw value vector (with NaN for missing) of one numeric dim."""
        return self.numeric[:, dim_id]

    def fingerprint(self) -> str:
        """Order-sensitive hash of all cell values and column labels."""
        h = hashlib.sha256()
        for meta in self.numeric_dims:
            h.update(b"num\x00" + meta.label.encode("utf-8") + b"\x00")
        for meta in self.categorical_dims:
            h.update(b"cat\x00" + meta.label.encode("utf-8") + b"\x00")
        h.update(np.ascontiguousarray(self.numeric, dtype=np.float64).tobytes())
        for col in self.categorical:
            for v in col:
                h.update(b"\x00\x01" if v is None else b"\x00" + v.encode("utf-8"))
        return h.hexdigest()


def normalize_value(dim: NumericDimMeta, v: float) -> float:
    """Map a raw value into [0, 1] over the dim's range.

    Constant dims map to 0.5; missing (NaN) propagates; out-of-range values
    (possible after load-time mutation of metadata) clamp to the interval.
    """
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return math.nan
    if dim.constant:
        return 0.5
    t = (v - dim.vmin) / (dim.vmax - dim.vmin)
    return min(1.0, max(0.0, t))


def normalize_column(dim: NumericDimMeta, values: np.ndarray) -> np.ndarray:
    """Vectorized normalize_value over a column; NaN stays NaN."""
    values = np.asarray(values, dtype=np.float64)
    if dim.constant:
        out = np.full(values.shape, 0.5)
        out[np.isnan(values)] = np.nan
        return out
    return np.clip((values - dim.vmin) / (dim.vmax - dim.vmin), 0.0, 1.0)


def bin_index(dim: NumericDimMeta, spec: BinningSpec, v: float) -> int:
    """Equal-width bin index in [0, B-1]; v == vmax falls in the top bin."""
    b = spec.bin_count
    k = int(math.floor(b * normalize_value(dim, v)))
    return min(k, b - 1)


def bin_column(dim: NumericDimMeta, spec: BinningSpec, values: np.ndarray) -> np.ndarray:
    """Vectorized bin_index; missing values map to -1."""
    t = normalize_column(dim, values)
    out = np.floor(spec.bin_count * t)
    out = np.where(np.isnan(t), -1, np.minimum(out, spec.bin_count - 1))
    return out.astype(np.int64)


def bin_bounds(dim: NumericDimMeta, spec: BinningSpec, k: int) -> tuple[float, float]:
    """Original-unit bounds [lo, hi] of bin k (top bin closes at vmax)."""
    w = spec.width(dim)
    lo = dim.vmin + k * w
    hi = dim.vmax if k == spec.bin_count - 1 else dim.vmin + (k + 1) * w
    return lo, hi


def _parse_numeric_cell(text: str) -> float | None:
    """Finite float value of a cell, or None if it is not numeric.

    Tokens parsing to NaN/inf are deliberately non-numeric: missing data is
    represented only by empty cells, so numeric columns stay finite.
    """
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def _load_schema_sidecar(schema) -> dict[str, str]:
    if schema is None:
        return {}
    if isinstance(schema, dict):
        mapping = schema
    else:
        with open(schema, encoding="utf-8") as fh:
            mapping = json.load(fh)
    for col, kind in mapping.items():
        if kind not in ("numeric", "categorical"):
            raise SchemaError(f"schema override for {col!r} must be 'numeric' or 'categorical', got {kind!r}")
    return dict(mapping)


def load_csv(path, schema=None, name: str | None = None) -> Dataset:
    """Load an RFC-4180 CSV with a header row into a Dataset.

    A column is typed numeric iff every non-empty cell parses as a finite
    real number, unless `schema` (a {column: "numeric"|"categorical"} dict
    or a path to such a JSON sidecar) overrides the inference. Empty cells
    are recorded as missing.
    """
    overrides = _load_schema_sidecar(schema)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                rows = list(reader)
            except csv.Error as exc:
                raise ParseError(f"malformed CSV: {exc}", row=reader.line_num) from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"file is not valid UTF-8: {exc}") from exc

    if not rows:
        raise ParseError("file is empty; expected a header row")
    header, data_rows = rows[0], rows[1:]
    if len(set(header)) != len(header):
        raise SchemaError("duplicate column names in header")
    if not data_rows:
        raise ParseError("no data rows after the header")

    for col in overrides:
        if col not in header:
            raise SchemaError(f"schema override names unknown column {col!r}")

    n_cols = len(header)
    for r, row in enumerate(data_rows, start=2):
        if len(row) != n_cols:
            raise ParseError(f"expected {n_cols} fields, found {len(row)}", row=r)

    # type inference, column by column
    numeric_cols: list[int] = []
    categorical_cols: list[int] = []
    for c, label in enumerate(header):
        kind = overrides.get(label)
        if kind is None:
            non_empty = [cell for row in data_rows if (cell := row[c]) != ""]
            is_numeric = bool(non_empty) and all(
                _parse_numeric_cell(cell) is not None for cell in non_empty
            )
            # a fully-empty column carries no evidence; treat as numeric
            kind = "numeric" if (is_numeric or not non_empty) else "categorical"
        (numeric_cols if kind == "numeric" else categorical_cols).append(c)

    if len(numeric_cols) < 2:
        raise SchemaError(
            f"need at least 2 numeric columns, found {len(numeric_cols)}"
        )

    m = len(data_rows)
    numeric = np.full((m, len(numeric_cols)), np.nan)
    for j, c in enumerate(numeric_cols):
        for i, row in enumerate(data_rows):
            cell = row[c]
            if cell == "":
                continue
            value = _parse_numeric_cell(cell)
            if value is None:
                raise ParseError(
                    f"cell {cell!r} is not a finite number", row=i + 2, column=header[c]
                )
            numeric[i, j] = value

    numeric_dims = []
    for j, c in enumerate(numeric_cols):
        col = numeric[:, j]
        present = col[~np.isnan(col)]
        vmin = float(present.min()) if present.size else math.nan
        vmax = float(present.max()) if present.size else math.nan
        numeric_dims.append(
            NumericDimMeta(
                id=j,
                label=header[c],
                vmin=vmin,
                vmax=vmax,
                missing_count=int(m - present.size),
            )
        )

    categorical = []
    categorical_dims = []
    for k, c in enumerate(categorical_cols):
        col = tuple(row[c] if row[c] != "" else None for row in data_rows)
        order: dict[str, int] = {}
        for v in col:
            if v is not None and v not in order:
                order[v] = 0
        for v in col:
            if v is not None:
                order[v] += 1
        categorical.append(col)
        categorical_dims.append(
            CategoricalDimMeta(
                id=k,
                label=header[c],
                values=tuple(order.keys()),
                counts=tuple(order.values()),
            )
        )

    if name is None:
        name = str(path)
    return Dataset(
        name=name,
        numeric=numeric,
        categorical=tuple(categorical),
        numeric_dims=tuple(numeric_dims),
        categorical_dims=tuple(categorical_dims),
    )


def write_csv(dataset: Dataset, path, schema_path=None) -> None:
    """Write a Dataset back to CSV (numeric columns first, then categorical).

    Floats are written with shortest round-trip repr so a reload reproduces
    them bit-exactly. When `schema_path` is given, a JSON sidecar pinning
    every column's type is written alongside (needed to reload categorical
    columns whose values all happen to parse as numbers).
    """
    header = [d.label for d in dataset.numeric_dims] + [
        d.label for d in dataset.categorical_dims
    ]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(dataset.m):
            row = []
            for j in range(dataset.n_v):
                v = dataset.numeric[i, j]
                row.append("" if math.isnan(v) else repr(float(v)))
            for col in dataset.categorical:
                row.append("" if col[i] is None else col[i])
            writer.writerow(row)
    if schema_path is not None:
        schema = {d.label: "numeric" for d in dataset.numeric_dims}
        schema.update({d.label: "categorical" for d in dataset.categorical_dims})
        with open(schema_path, "w", encoding="utf-8") as fh:
            json.dump(schema, fh, indent=2, sort_keys=True)
