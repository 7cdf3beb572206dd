"""Quantitative association rules between labels and numeric subranges.

Rules pair one categorical value L with one equal-width bin of one numeric
dimension. The label_to_range direction scores how strongly a label
concentrates inside a bin (the bin is predicted from the label); the
range_to_label direction scores how strongly a bin separates a label
(the label is predicted from the bin). Support is normalized by the total
item count; confidence divides support by the antecedent's support.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dataset import BinningSpec, Dataset, bin_bounds, bin_column
from .errors import NoCategoricalDim
from .metrics import DistanceMatrix
from .ordering import order_axes

MISSING_COLOR_INDEX = -1  # reserved neutral palette slot


class RuleDirection(str, Enum):
    LABEL_TO_RANGE = "label_to_range"
    RANGE_TO_LABEL = "range_to_label"
    BOTH = "both"


@dataclass(frozen=True)
class RuleThresholds:
    t_sup: float
    t_con: float
    direction: RuleDirection = RuleDirection.RANGE_TO_LABEL

    def __post_init__(self):
        for name, v in (("t_sup", self.t_sup), ("t_con", self.t_con)):
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must be within [0, 1], got {v}")


@dataclass(frozen=True)
class Rule:
    cat_dim: int
    label: str
    dim: int
    bin: int
    support: float
    confidence: float
    antecedent_support: float
    direction: RuleDirection  # LABEL_TO_RANGE or RANGE_TO_LABEL, never BOTH

    def key(self) -> tuple:
        return (self.direction.value, self.label, self.dim, self.bin)


@dataclass(frozen=True)
class LabelPanel:
    label: str
    dims: tuple[int, ...]  # axis order
    rules: tuple[Rule, ...]


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]
    panels: tuple[LabelPanel, ...]


def label_coloring(dataset: Dataset, cat_dim: int) -> np.ndarray:
    """Palette index per item, following the categorical dim's value order.

    Items with a missing label get MISSING_COLOR_INDEX.
    """
    if not (0 <= cat_dim < dataset.n_c):
        raise NoCategoricalDim(f"no categorical dim with id {cat_dim}")
    meta = dataset.categorical_dims[cat_dim]
    index = {v: i for i, v in enumerate(meta.values)}
    col = dataset.categorical[cat_dim]
    return np.array(
        [MISSING_COLOR_INDEX if v is None else index[v] for v in col], dtype=np.int64
    )


def mine_rules(dataset: Dataset, binning: BinningSpec, cat_dim: int,
               thresholds: RuleThresholds, distances: DistanceMatrix | None = None,
               dims=None) -> RuleSet:
    """Exhaustively score all (label, dim, bin) triples and keep survivors.

    A triple survives when at least one item satisfies both sides,
    support >= t_sup and confidence >= t_con. `dims` restricts the numeric
    dims scanned (defaults to all non-constant ones). When a distance
    matrix is given, each label panel's axes are tour-ordered; otherwise
    they stay in dim-id order.
    """
    if not (0 <= cat_dim < dataset.n_c):
        raise NoCategoricalDim(f"no categorical dim with id {cat_dim}")
    meta = dataset.categorical_dims[cat_dim]
    labels_col = dataset.categorical[cat_dim]
    m = dataset.m
    b = binning.bin_count

    if dims is None:
        dims = [d.id for d in dataset.numeric_dims if not d.constant]
    dims = sorted(dims)

    if thresholds.direction is RuleDirection.BOTH:
        directions = (RuleDirection.LABEL_TO_RANGE, RuleDirection.RANGE_TO_LABEL)
    else:
        directions = (thresholds.direction,)

    label_masks = {
        value: np.array([v == value for v in labels_col]) for value in meta.values
    }
    has_label = np.array([v is not None for v in labels_col])
    rules: list[Rule] = []
    for j in dims:
        bins = bin_column(dataset.numeric_dims[j], binning, dataset.numeric[:, j])
        # items missing either field are excluded for this (dim, label-dim) pair
        usable = (bins >= 0) & has_label
        for value in meta.values:
            is_label = label_masks[value]
            n_label = int((is_label & usable).sum())
            for k in range(b):
                in_bin = usable & (bins == k)
                n_bin = int(in_bin.sum())
                n_joint = int((in_bin & is_label).sum())
                if n_joint == 0:
                    continue
                support = n_joint / m
                if support < thresholds.t_sup:
                    continue
                for direction in directions:
                    n_ante = n_label if direction is RuleDirection.LABEL_TO_RANGE else n_bin
                    confidence = n_joint / n_ante
                    if confidence < thresholds.t_con:
                        continue
                    rules.append(
                        Rule(
                            cat_dim=cat_dim,
                            label=value,
                            dim=j,
                            bin=k,
                            support=support,
                            confidence=confidence,
                            antecedent_support=n_ante / m,
                            direction=direction,
                        )
                    )

    order_of = {v: i for i, v in enumerate(meta.values)}
    rules.sort(key=lambda r: (order_of[r.label], r.dim, r.bin, r.direction.value))

    panels = []
    for value in meta.values:
        mine = [r for r in rules if r.label == value]
        if not mine:
            continue  # labels with no surviving rules yield no panel
        panel_dims = sorted({r.dim for r in mine})
        if distances is not None and len(panel_dims) >= 2:
            panel_dims = list(order_axes(panel_dims, distances).dims)
        panels.append(LabelPanel(label=value, dims=tuple(panel_dims), rules=tuple(mine)))
    return RuleSet(rules=tuple(rules), panels=tuple(panels))


def rules_to_payload(ruleset: RuleSet, dataset: Dataset, binning: BinningSpec) -> list[dict]:
    """JSON-ready rule rows with bin bounds in original units."""
    rows = []
    for r in ruleset.rules:
        meta = dataset.numeric_dims[r.dim]
        lo, hi = bin_bounds(meta, binning, r.bin)
        rows.append(
            {
                "label": r.label,
                "categorical_dim": dataset.categorical_dims[r.cat_dim].label,
                "dim": meta.label,
                "bin": r.bin,
                "range": [lo, hi],
                "support": r.support,
                "confidence": r.confidence,
                "direction": r.direction.value,
            }
        )
    return rows
