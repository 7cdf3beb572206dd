import numpy as np
import pytest

from dimscope.errors import RevisionConflict, ValidationError
from dimscope.jsonutil import canonical_json
from dimscope.metrics import DistanceMetric, distance_matrix
from dimscope.session import (
    Mode,
    Session,
    SessionConfig,
    apply_event,
    initial_state,
)
from dimscope.synth import dataset_from_arrays


@pytest.fixture()
def fixture_session(two_pair_dataset, two_pair_distances):
    s = Session(two_pair_dataset, dm=two_pair_distances, config=SessionConfig(d_select=0.5))
    yield s
    s.stop()


def _state(dataset, **cfg):
    return initial_state(dataset, SessionConfig(**cfg))


def test_apply_bumps_revision_even_when_idempotent(two_pair_dataset):
    st = _state(two_pair_dataset)
    metric = DistanceMetric.ABSOLUTE
    st1, _ = apply_event(st, two_pair_dataset, metric, {"type": "SetDSelect", "value": 0.3})
    st2, _ = apply_event(st1, two_pair_dataset, metric, {"type": "SetDSelect", "value": 0.3})
    assert st1.d_select == st2.d_select == 0.3
    assert (st1.revision, st2.revision) == (1, 2)


def test_label_rules_requires_cat_dim(two_pair_dataset):
    st = _state(two_pair_dataset)
    with pytest.raises(ValidationError) as exc:
        apply_event(st, two_pair_dataset, DistanceMetric.ABSOLUTE,
                    {"type": "SetMode", "mode": "label_rules"})
    assert exc.value.field == "mode"

    st, _ = apply_event(st, two_pair_dataset, DistanceMetric.ABSOLUTE,
                        {"type": "SetCatDim", "dim": 0})
    st, _ = apply_event(st, two_pair_dataset, DistanceMetric.ABSOLUTE,
                        {"type": "SetMode", "mode": "label_rules"})
    assert st.mode is Mode.LABEL_RULES


def test_d_remove_clamped_below_d_select(two_pair_dataset):
    metric = DistanceMetric.ABSOLUTE
    st = _state(two_pair_dataset, d_select=0.6)
    st, warn = apply_event(st, two_pair_dataset, metric, {"type": "SetDRemove", "value": 0.5})
    assert st.d_remove == 0.5 and warn == []
    # lowering d_select below d_remove drags d_remove down with a warning
    st, warn = apply_event(st, two_pair_dataset, metric, {"type": "SetDSelect", "value": 0.4})
    assert st.d_select == 0.4
    assert st.d_remove < 0.4
    assert len(warn) == 1
    # raising d_remove above d_select clamps instead of rejecting
    st, warn = apply_event(st, two_pair_dataset, metric, {"type": "SetDRemove", "value": 0.9})
    assert st.d_remove < st.d_select
    assert len(warn) == 1


def test_rect_events_flip_membership(two_pair_dataset):
    metric = DistanceMetric.ABSOLUTE
    st = _state(two_pair_dataset)
    st, _ = apply_event(st, two_pair_dataset, metric, {"type": "RectExcludeDims", "dims": [0, 2]})
    assert st.forced_exclude == {0, 2}
    st, _ = apply_event(st, two_pair_dataset, metric, {"type": "RectIncludeDims", "dims": [2]})
    assert st.forced_exclude == {0}
    assert st.forced_include == {2}
    st, _ = apply_event(st, two_pair_dataset, metric, {"type": "ClearOverrides"})
    assert st.forced_include == st.forced_exclude == frozenset()


def test_rect_rejects_unknown_dim(two_pair_dataset):
    st = _state(two_pair_dataset)
    with pytest.raises(ValidationError):
        apply_event(st, two_pair_dataset, DistanceMetric.ABSOLUTE,
                    {"type": "RectExcludeDims", "dims": [99]})


def test_validation_failures_leave_no_trace(two_pair_dataset):
    metric = DistanceMetric.ABSOLUTE
    st = _state(two_pair_dataset)
    for bad in [
        {"type": "SetDSelect", "value": 2.5},
        {"type": "SetDSelect", "value": "x"},
        {"type": "SetOpacity", "value": 0.0},
        {"type": "SetOpacity", "value": 1.5},
        {"type": "SetCatDim", "dim": 7},
        {"type": "SetColorSource", "source": "categorical"},  # no cat dim selected
        {"type": "SetColorSource", "source": "kmeans", "k": 0},
        {"type": "SetRuleThresholds", "t_sup": -0.1, "t_con": 0.5},
        {"type": "Nonsense"},
        {"type": "SetRuleThresholds", "t_sup": 0.1, "t_con": 0.5, "direction": "sideways"},
    ]:
        with pytest.raises(ValidationError):
            apply_event(st, two_pair_dataset, metric, bad)
    assert st.revision == 0


def test_two_pair_view_has_two_panels(fixture_session):
    view = fixture_session.view()
    assert view["revision"] == 0
    assert len(view["panels"]) == 2
    axes = sorted(sorted(a["dim"] for a in p["axes"]) for p in view["panels"])
    assert axes == [[0, 1], [2, 3]]
    for panel in view["panels"]:
        assert len(panel["lines"]) == fixture_session.dataset.m
        assert len(panel["lines"][0]) == len(panel["axes"])
        assert len(panel["colors"]) == fixture_session.dataset.m


def test_view_determinism(fixture_session):
    a = canonical_json(fixture_session.view())
    b = canonical_json(fixture_session.build_fresh())
    assert a == b


def test_label_rules_view(fixture_session):
    s = fixture_session
    s.apply({"type": "SetCatDim", "dim": 0})
    s.apply({"type": "SetColorSource", "source": "categorical"})
    s.apply({"type": "SetRuleThresholds", "t_sup": 0.05, "t_con": 0.6,
             "direction": "range_to_label"})
    s.apply({"type": "SetMode", "mode": "label_rules"})
    view = s.view()
    assert view["mode"] == "label_rules"
    assert view["panels"], "separable labels should yield at least one panel"
    for p in view["panels"]:
        assert p["provenance"]["kind"] == "rules"
        assert p["provenance"]["rules"]
    assert {e["label"] for e in view["legend"]} >= {"low", "high"}


def test_label_rules_perfect_separation_panel():
    # all A-items in the bottom bin of dim 0: rules mode shows an A panel on dim 0
    values = np.concatenate([np.linspace(0.0, 0.9, 20), np.linspace(5.0, 8.0, 80)])
    ds = dataset_from_arrays(
        "sep",
        np.column_stack([values, np.linspace(0, 1, 100)]),
        categorical={"lab": ["A"] * 20 + ["B"] * 80},
    )
    s = Session(ds, dm=distance_matrix(ds), config=SessionConfig(d_select=0.2))
    try:
        s.apply({"type": "SetCatDim", "dim": 0})
        s.apply({"type": "SetColorSource", "source": "categorical"})
        s.apply({"type": "SetRuleThresholds", "t_sup": 0.15, "t_con": 0.95,
                 "direction": "range_to_label"})
        s.apply({"type": "SetMode", "mode": "label_rules"})
        view = s.view()
        a_panels = [p for p in view["panels"] if p["provenance"]["label"] == "A"]
        assert len(a_panels) == 1
        assert [a["dim"] for a in a_panels[0]["axes"]] == [0]
    finally:
        s.stop()


def test_empty_ruleset_yields_no_panels_but_legend(fixture_session):
    s = fixture_session
    s.apply({"type": "SetCatDim", "dim": 0})
    s.apply({"type": "SetColorSource", "source": "categorical"})
    s.apply({"type": "SetRuleThresholds", "t_sup": 1.0, "t_con": 1.0,
             "direction": "range_to_label"})
    s.apply({"type": "SetMode", "mode": "label_rules"})
    view = s.view()
    assert view["panels"] == []
    assert view["legend"]
    assert view["advisory"] is None


def test_clique_explosion_advisory():
    # complete multipartite distances: 3^4 maximal cliques, far over the cap
    from dimscope.metrics import DistanceMatrix

    n = 12
    ds = dataset_from_arrays("boom", np.random.default_rng(0).random((20, n)))
    d = np.full((n, n), 0.9)  # same-group dims stay far apart (no edge)
    for a in range(n):
        for b in range(n):
            if a % 4 != b % 4:
                d[a, b] = 0.05  # cross-group dims all connect
    np.fill_diagonal(d, 0.0)
    dm = DistanceMatrix(values=d, metric=DistanceMetric.ABSOLUTE,
                        fingerprint=ds.fingerprint(), defined=np.ones(n, bool))
    s = Session(ds, dm=dm, config=SessionConfig(d_select=0.5, clique_cap=3))
    try:
        view = s.view()
        assert view["panels"] == []
        assert view["advisory"]
    finally:
        s.stop()


def test_no_panel_references_hidden_excluded_or_constant():
    numeric = np.column_stack(
        [np.arange(30.0), np.arange(30.0) * 2, np.full(30, 7.0), np.arange(30.0)[::-1]]
    )
    ds = dataset_from_arrays("h", numeric)
    dm = distance_matrix(ds)
    s = Session(ds, dm=dm, config=SessionConfig(d_select=0.9))
    try:
        s.apply({"type": "RectExcludeDims", "dims": [3]})
        view = s.view()
        banned = {2, 3}  # 2 constant, 3 excluded
        for p in view["panels"]:
            assert not ({a["dim"] for a in p["axes"]} & banned)
        assert not (set(view["graph"]["dims"]) & banned)
    finally:
        s.stop()


def test_coalescing_final_view_matches_fresh_build(fixture_session):
    s = fixture_session
    for i in range(100):
        s.apply({"type": "SetDSelect", "value": 0.1 + (i % 9) * 0.05})
    served = s.view()
    fresh = s.build_fresh()
    assert canonical_json(served) == canonical_json(fresh)
    assert served["revision"] == 100


def test_compare_and_set_conflict(fixture_session):
    s = fixture_session
    rev, _ = s.apply({"type": "SetOpacity", "value": 0.7})
    with pytest.raises(RevisionConflict):
        s.apply({"type": "SetOpacity", "value": 0.9}, expected_revision=rev - 1)
    s.apply({"type": "SetOpacity", "value": 0.9}, expected_revision=rev)
    assert s.state.opacity == 0.9
