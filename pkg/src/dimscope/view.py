"""Assembly of the render payload served to the UI.

A view combines the dimension-graph pane (dot layout, edges, stress) with
the PCP panel list (ordered axes, normalized polylines, colors) for one
session state. Building a view is a pure function of the state given the
dataset and distance matrix; the context only memoizes sub-results that
are themselves pure (layout per visible set, clustering per seed, rules
per threshold tuple).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .cluster import ClusterAssignment, kmeans, normalized_feature_block
from .dataset import BinningSpec, Dataset, normalize_column
from .errors import CliqueExplosion
from .graph import GraphParams, build_graph, maximal_cliques, merge_panels
from .mds import Layout2D, classical_mds
from .metrics import DistanceMatrix
from .ordering import order_segments
from .rules import MISSING_COLOR_INDEX, RuleSet, label_coloring, mine_rules

PALETTE_SIZE = 12


@dataclass
class ViewContext:
    """Dataset-scoped inputs and memoization for view building."""

    dataset: Dataset
    dm: DistanceMatrix
    binning: BinningSpec
    clique_cap: int = 256
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    _layouts: dict = field(default_factory=dict, repr=False)
    _clusters: dict = field(default_factory=dict, repr=False)
    _rules: dict = field(default_factory=dict, repr=False)
    _blocks: dict = field(default_factory=dict, repr=False)

    def layout_for(self, visible: tuple[int, ...]) -> Layout2D:
        key = (visible, self.dm.metric.value)
        with self._lock:
            if key in self._layouts:
                return self._layouts[key]
        if len(visible) >= 2:
            layout = classical_mds(self.dm, visible)
        elif len(visible) == 1:
            layout = Layout2D(positions={visible[0]: (0.5, 0.5)}, stress=0.0)
        else:
            layout = Layout2D(positions={}, stress=0.0)
        with self._lock:
            self._layouts[key] = layout
        return layout

    def clusters_for(self, k: int, seed: int) -> ClusterAssignment:
        key = (k, seed)
        with self._lock:
            if key in self._clusters:
                return self._clusters[key]
        if "block" not in self._blocks:
            self._blocks["block"] = normalized_feature_block(self.dataset)
        x, _ = self._blocks["block"]
        assignment = kmeans(x, k, seed=seed)
        with self._lock:
            self._clusters[key] = assignment
        return assignment

    def rules_for(self, cat_dim, thresholds, visible) -> RuleSet:
        key = (cat_dim, thresholds.t_sup, thresholds.t_con, thresholds.direction.value, visible)
        with self._lock:
            if key in self._rules:
                return self._rules[key]
        ruleset = mine_rules(
            self.dataset, self.binning, cat_dim, thresholds,
            distances=self.dm, dims=visible,
        )
        with self._lock:
            self._rules[key] = ruleset
        return ruleset


def _axis_payload(dataset: Dataset, dim: int) -> dict:
    meta = dataset.numeric_dims[dim]
    return {"dim": dim, "label": meta.label, "vmin": meta.vmin, "vmax": meta.vmax}


def _panel_lines(dataset: Dataset, dims: tuple[int, ...]) -> list[list]:
    cols = []
    for j in dims:
        col = normalize_column(dataset.numeric_dims[j], dataset.numeric[:, j])
        cols.append([None if np.isnan(v) else float(v) for v in col])
    return [list(line) for line in zip(*cols)]


def _colors_and_legend(ctx: ViewContext, state) -> tuple[list[int], list[dict]]:
    if state.color_source.kind == "categorical":
        coloring = label_coloring(ctx.dataset, state.selected_cat_dim)
        meta = ctx.dataset.categorical_dims[state.selected_cat_dim]
        legend = [{"index": i, "label": v} for i, v in enumerate(meta.values)]
        if (coloring == MISSING_COLOR_INDEX).any():
            legend.append({"index": MISSING_COLOR_INDEX, "label": "(missing)"})
        return [int(c) for c in coloring], legend
    assignment = ctx.clusters_for(state.color_source.k, state.color_source.seed)
    legend = [{"index": i, "label": f"cluster {i + 1}"} for i in range(assignment.k)]
    return [int(c) for c in assignment.labels], legend


def build_view(ctx: ViewContext, state) -> dict:
    """The full ViewModel dict for one session state."""
    params = GraphParams(
        d_select=state.d_select,
        d_remove=state.d_remove,
        forced_include=state.forced_include,
        forced_exclude=state.forced_exclude,
        sampling_seed=state.sampling_seed,
    )
    graph = build_graph(ctx.dm, params)
    layout = ctx.layout_for(graph.visible_dims)
    colors, legend = _colors_and_legend(ctx, state)

    advisory = None
    panel_payloads = []
    if state.mode.value == "distance_cliques":
        try:
            cliques = maximal_cliques(graph, cap=ctx.clique_cap)
        except CliqueExplosion as exc:
            cliques = None
            advisory = str(exc)
        if cliques is not None:
            for idx, panel in enumerate(merge_panels(cliques)):
                order = order_segments(panel.segments, panel.junctions, ctx.dm)
                panel_payloads.append(
                    {
                        "id": f"panel-{idx}",
                        "axes": [_axis_payload(ctx.dataset, j) for j in order.dims],
                        "lines": _panel_lines(ctx.dataset, order.dims),
                        "colors": colors,
                        "provenance": {
                            "kind": "cliques",
                            "cliques": [list(seg) for seg in panel.segments],
                            "junctions": list(panel.junctions),
                            "cost": order.cost,
                        },
                    }
                )
    else:
        ruleset = ctx.rules_for(
            state.selected_cat_dim, state.rule_thresholds, graph.visible_dims
        )
        for idx, lp in enumerate(ruleset.panels):
            panel_payloads.append(
                {
                    "id": f"panel-{idx}",
                    "axes": [_axis_payload(ctx.dataset, j) for j in lp.dims],
                    "lines": _panel_lines(ctx.dataset, lp.dims),
                    "colors": colors,
                    "provenance": {
                        "kind": "rules",
                        "label": lp.label,
                        "rules": [
                            {
                                "dim": r.dim,
                                "bin": r.bin,
                                "support": r.support,
                                "confidence": r.confidence,
                                "direction": r.direction.value,
                            }
                            for r in lp.rules
                        ],
                    },
                }
            )

    return {
        "revision": state.revision,
        "mode": state.mode.value,
        "opacity": state.opacity,
        "graph": {
            "dims": list(graph.visible_dims),
            "positions": {str(j): [x, y] for j, (x, y) in layout.positions.items()},
            "edges": sorted([list(e) for e in graph.edges]),
            "hidden_count": len(graph.hidden_dims),
            "stress": layout.stress,
        },
        "panels": panel_payloads,
        "legend": legend,
        "advisory": advisory,
    }
