"""Interactive session state and the event/recompute loop.

All accepted mutations go through `apply_event`, a pure function from
(state, event) to (state', warnings) that bumps the revision counter.
The `Session` object serializes mutations behind a lock and rebuilds the
view on a worker thread: a newly accepted event supersedes any in-flight
build, so bursts of slider events coalesce into one recompute of the
latest state. Readers wait until the built view matches the current
revision, so a served view always reflects every accepted event.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from enum import Enum

from .cluster import DEFAULT_K
from .dataset import BinningSpec, Dataset
from .errors import RevisionConflict, ValidationError
from .graph import DEFAULT_CLIQUE_CAP
from .metrics import DistanceMatrix, DistanceMetric, distance_matrix
from .rules import RuleDirection, RuleThresholds
from .view import ViewContext, build_view

CLAMP_EPS = 1e-9


class Mode(str, Enum):
    DISTANCE_CLIQUES = "distance_cliques"
    LABEL_RULES = "label_rules"


@dataclass(frozen=True)
class ColorSource:
    kind: str  # "categorical" | "kmeans"
    k: int = DEFAULT_K
    seed: int = 0


@dataclass(frozen=True)
class SessionState:
    mode: Mode
    d_select: float
    d_remove: float
    sampling_seed: int
    forced_include: frozenset[int]
    forced_exclude: frozenset[int]
    rule_thresholds: RuleThresholds
    selected_cat_dim: int | None
    color_source: ColorSource
    opacity: float
    revision: int


@dataclass(frozen=True)
class SessionConfig:
    metric: DistanceMetric = DistanceMetric.ABSOLUTE
    bin_count: int = 8
    clique_cap: int = DEFAULT_CLIQUE_CAP
    d_select: float | None = None  # default: 20% of the metric range
    d_remove: float = 0.0
    sampling_seed: int = 0
    kmeans_k: int = DEFAULT_K
    kmeans_seed: int = 0
    opacity: float = 0.5
    slider_steps: int = 200


def initial_state(dataset: Dataset, config: SessionConfig) -> SessionState:
    d_select = config.d_select
    if d_select is None:
        d_select = 0.2 * config.metric.max_distance
    return SessionState(
        mode=Mode.DISTANCE_CLIQUES,
        d_select=d_select,
        d_remove=config.d_remove,
        sampling_seed=config.sampling_seed,
        forced_include=frozenset(),
        forced_exclude=frozenset(),
        rule_thresholds=RuleThresholds(t_sup=0.1, t_con=0.5, direction=RuleDirection.RANGE_TO_LABEL),
        selected_cat_dim=None,
        color_source=ColorSource(kind="kmeans", k=min(config.kmeans_k, dataset.m), seed=config.kmeans_seed),
        opacity=config.opacity,
        revision=0,
    )


def _number(event: dict, key: str) -> float:
    v = event.get(key)
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise ValidationError(key, "must be a number")
    v = float(v)
    if v != v:
        raise ValidationError(key, "must not be NaN")
    return v


def _dim_set(event: dict, dataset: Dataset) -> frozenset[int]:
    dims = event.get("dims")
    if not isinstance(dims, (list, tuple)):
        raise ValidationError("dims", "must be a list of dim ids")
    out = set()
    for d in dims:
        if not isinstance(d, int) or isinstance(d, bool) or not (0 <= d < dataset.n_v):
            raise ValidationError("dims", f"unknown numeric dim id {d!r}")
        out.add(d)
    return frozenset(out)


def apply_event(state: SessionState, dataset: Dataset, metric: DistanceMetric,
                event: dict) -> tuple[SessionState, list[str]]:
    """Validate one event against the current state and apply it.

    Raises ValidationError without touching the state; on acceptance the
    revision is bumped even when the resulting view would be identical.
    """
    if not isinstance(event, dict):
        raise ValidationError("event", "must be a JSON object")
    etype = event.get("type")
    warnings: list[str] = []
    new = state

    if etype == "SetMode":
        try:
            mode = Mode(event.get("mode"))
        except ValueError:
            raise ValidationError("mode", f"unknown mode {event.get('mode')!r}") from None
        if mode is Mode.LABEL_RULES and state.selected_cat_dim is None:
            raise ValidationError("mode", "label_rules mode requires a selected categorical dim")
        new = replace(state, mode=mode)

    elif etype == "SetDSelect":
        v = _number(event, "value")
        if not (0.0 <= v <= metric.max_distance):
            raise ValidationError("value", f"d_select must be within [0, {metric.max_distance}]")
        d_remove = state.d_remove
        if d_remove != 0.0 and d_remove >= v:
            d_remove = max(0.0, v - CLAMP_EPS)
            warnings.append(f"d_remove clamped to {d_remove} to stay below d_select")
        new = replace(state, d_select=v, d_remove=d_remove)

    elif etype == "SetDRemove":
        v = _number(event, "value")
        if not (0.0 <= v <= metric.max_distance):
            raise ValidationError("value", f"d_remove must be within [0, {metric.max_distance}]")
        if v != 0.0 and v >= state.d_select:
            clamped = max(0.0, state.d_select - CLAMP_EPS)
            warnings.append(f"d_remove clamped to {clamped} to stay below d_select")
            v = clamped
        new = replace(state, d_remove=v)

    elif etype == "SetCatDim":
        dim = event.get("dim")
        if dim is not None:
            if not isinstance(dim, int) or isinstance(dim, bool) or not (0 <= dim < dataset.n_c):
                raise ValidationError("dim", f"unknown categorical dim id {dim!r}")
        else:
            if state.mode is Mode.LABEL_RULES:
                raise ValidationError("dim", "cannot clear the categorical dim in label_rules mode")
            if state.color_source.kind == "categorical":
                raise ValidationError("dim", "cannot clear the categorical dim while it drives coloring")
        new = replace(state, selected_cat_dim=dim)

    elif etype == "SetRuleThresholds":
        t_sup = _number(event, "t_sup")
        t_con = _number(event, "t_con")
        if not (0.0 <= t_sup <= 1.0):
            raise ValidationError("t_sup", "must be within [0, 1]")
        if not (0.0 <= t_con <= 1.0):
            raise ValidationError("t_con", "must be within [0, 1]")
        try:
            direction = RuleDirection(event.get("direction", state.rule_thresholds.direction.value))
        except ValueError:
            raise ValidationError("direction", f"unknown direction {event.get('direction')!r}") from None
        new = replace(state, rule_thresholds=RuleThresholds(t_sup, t_con, direction))

    elif etype == "RectIncludeDims":
        dims = _dim_set(event, dataset)
        new = replace(
            state,
            forced_include=state.forced_include | dims,
            forced_exclude=state.forced_exclude - dims,
        )

    elif etype == "RectExcludeDims":
        dims = _dim_set(event, dataset)
        new = replace(
            state,
            forced_include=state.forced_include - dims,
            forced_exclude=state.forced_exclude | dims,
        )

    elif etype == "SetColorSource":
        source = event.get("source")
        if source == "categorical":
            if state.selected_cat_dim is None:
                raise ValidationError("source", "categorical coloring requires a selected categorical dim")
            new = replace(state, color_source=ColorSource(kind="categorical"))
        elif source == "kmeans":
            k = event.get("k", state.color_source.k)
            seed = event.get("seed", state.color_source.seed)
            if not isinstance(k, int) or isinstance(k, bool) or not (1 <= k <= dataset.m):
                raise ValidationError("k", f"k must be an integer in [1, {dataset.m}]")
            if not isinstance(seed, int) or isinstance(seed, bool):
                raise ValidationError("seed", "must be an integer")
            new = replace(state, color_source=ColorSource(kind="kmeans", k=k, seed=seed))
        else:
            raise ValidationError("source", f"unknown color source {source!r}")

    elif etype == "SetOpacity":
        v = _number(event, "value")
        if not (0.0 < v <= 1.0):
            raise ValidationError("value", "opacity must be within (0, 1]")
        new = replace(state, opacity=v)

    elif etype == "ClearOverrides":
        new = replace(state, forced_include=frozenset(), forced_exclude=frozenset())

    else:
        raise ValidationError("type", f"unknown event type {etype!r}")

    return replace(new, revision=state.revision + 1), warnings


class Session:
    """One authoritative interactive session over a loaded dataset."""

    def __init__(self, dataset: Dataset, dm: DistanceMatrix | None = None,
                 config: SessionConfig | None = None):
        self.dataset = dataset
        self.config = config or SessionConfig()
        self._cond = threading.Condition()
        self._state = initial_state(dataset, self.config)
        self._built: tuple[int, dict] | None = None
        self._stopping = False
        self._worker: threading.Thread | None = None
        self.ready = threading.Event()
        self.ctx: ViewContext | None = None
        if dm is not None:
            self._finish_setup(dm)

    # -- lifecycle ---------------------------------------------------------

    def _finish_setup(self, dm: DistanceMatrix) -> None:
        self.ctx = ViewContext(
            dataset=self.dataset,
            dm=dm,
            binning=BinningSpec(self.config.bin_count),
            clique_cap=self.config.clique_cap,
        )
        self.ready.set()
        self._worker = threading.Thread(target=self._run_worker, daemon=True)
        self._worker.start()

    def precompute(self) -> None:
        """Compute the distance matrix now (blocking)."""
        if not self.ready.is_set():
            self._finish_setup(distance_matrix(self.dataset, self.config.metric))

    def start_background_precompute(self) -> None:
        threading.Thread(target=self.precompute, daemon=True).start()

    def stop(self) -> None:
        with self._cond:
            self._stopping = True
            self._cond.notify_all()

    # -- state -------------------------------------------------------------

    @property
    def state(self) -> SessionState:
        return self._state

    @property
    def revision(self) -> int:
        return self._state.revision

    def apply(self, event: dict, expected_revision: int | None = None) -> tuple[int, list[str]]:
        """Serialize and apply one event; returns (new revision, warnings)."""
        with self._cond:
            if expected_revision is not None and expected_revision != self._state.revision:
                raise RevisionConflict(
                    f"expected revision {expected_revision}, session is at {self._state.revision}"
                )
            new_state, warnings = apply_event(
                self._state, self.dataset, self.config.metric, event
            )
            self._state = new_state
            self._cond.notify_all()
            return new_state.revision, warnings

    # -- views -------------------------------------------------------------

    def _run_worker(self) -> None:
        while True:
            with self._cond:
                while not self._stopping and self._built is not None and self._built[0] == self._state.revision:
                    self._cond.wait()
                if self._stopping:
                    return
                snapshot = self._state
            view = build_view(self.ctx, snapshot)
            with self._cond:
                if snapshot.revision == self._state.revision:
                    self._built = (snapshot.revision, view)
                    self._cond.notify_all()
                # else: superseded mid-build; drop the stale view and retry

    def view(self, timeout: float = 120.0) -> dict:
        """The ViewModel for the latest accepted revision (waits for the worker)."""
        deadline = threading.TIMEOUT_MAX if timeout is None else timeout
        with self._cond:
            ok = self._cond.wait_for(
                lambda: self._built is not None and self._built[0] == self._state.revision,
                timeout=deadline,
            )
            if not ok:
                raise TimeoutError("view build did not complete in time")
            return self._built[1]

    def build_fresh(self) -> dict:
        """Build a view of the current state directly on this thread."""
        return build_view(self.ctx, self._state)
