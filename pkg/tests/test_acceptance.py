"""Acceptance suite: one test per release criterion, each printing a
pass/fail line with its runtime against the stated budget.

Run with `pytest tests/test_acceptance.py -v -s`.
"""

import itertools
import time
from contextlib import contextmanager

import numpy as np
import pytest
from fastapi.testclient import TestClient

from dimscope.dataset import BinningSpec, load_csv, write_csv
from dimscope.graph import DimensionGraph, GraphParams, maximal_cliques, merge_panels, sample_dimensions
from dimscope.jsonutil import canonical_json
from dimscope.mds import mds_embedding
from dimscope.metrics import (
    DistanceMatrix,
    DistanceMetric,
    distance_matrix,
    load_distance_cache,
    save_distance_cache,
    spearman,
)
from dimscope.ordering import order_axes
from dimscope.rules import RuleDirection, RuleThresholds, mine_rules
from dimscope.server import create_app
from dimscope.session import Session, SessionConfig
from dimscope.synth import dataset_from_arrays, grouped_dataset, scale_fixture, two_pair_fixture

from oracles import (
    oracle_best_path,
    oracle_maximal_cliques,
    oracle_mine_rules,
    oracle_path_cost,
    oracle_spearman,
    procrustes_rms,
)


@contextmanager
def criterion(number, name, budget_s):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        dt = time.perf_counter() - t0
        print(f"\n[acceptance] criterion {number} ({name}): FAIL ({dt:.2f}s)")
        raise
    dt = time.perf_counter() - t0
    if dt >= budget_s:
        print(f"\n[acceptance] criterion {number} ({name}): FAIL (runtime {dt:.2f}s over {budget_s}s budget)")
        raise AssertionError(f"criterion {number} exceeded its {budget_s}s budget: {dt:.2f}s")
    print(f"\n[acceptance] criterion {number} ({name}): PASS ({dt:.2f}s / budget {budget_s}s)")


def _dm(values) -> DistanceMatrix:
    values = np.asarray(values, dtype=np.float64)
    return DistanceMatrix(
        values=values,
        metric=DistanceMetric.ABSOLUTE,
        fingerprint="acceptance",
        defined=np.ones(values.shape[0], dtype=bool),
    )


def test_c01_spearman_oracle():
    rng = np.random.default_rng(101)
    with criterion(1, "spearman vs O(m^2) oracle", 5.0):
        checked = 0
        while checked < 1000:
            m = int(rng.integers(5, 51))
            a = np.round(rng.standard_normal(m), 1)  # rounding forces ties
            b = np.round(rng.standard_normal(m), 1)
            a[rng.random(m) < 0.15] = np.nan
            b[rng.random(m) < 0.15] = np.nan
            expected = None
            common = ~np.isnan(a) & ~np.isnan(b)
            if common.sum() >= 2:
                expected = oracle_spearman(list(a), list(b))
            if expected is None:
                continue  # degenerate draw; the oracle cannot score it either
            got = spearman(a, b)
            assert abs(got - expected) <= 1e-12
            checked += 1


def test_c02_clique_oracle():
    rng = np.random.default_rng(202)
    with criterion(2, "maximal cliques vs 2^n subset oracle", 10.0):
        for _ in range(200):
            n = int(rng.integers(3, 13))
            p = rng.uniform(0.2, 0.8)
            edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
            g = DimensionGraph(
                visible_dims=tuple(range(n)),
                edges=frozenset(edges),
                hidden_dims={},
            )
            assert maximal_cliques(g, cap=100_000) == oracle_maximal_cliques(n, edges)


def test_c03_planted_group_recovery():
    groups = [tuple(range(4 * g, 4 * g + 4)) for g in range(3)]
    with criterion(3, "planted correlation groups recovered as cliques", 10.0):
        hits = 0
        for seed in range(100):
            ds = grouped_dataset(m=200, group_sizes=[4, 4, 4], noise=0.25, seed=seed)
            dm = distance_matrix(ds, DistanceMetric.ABSOLUTE)
            from dimscope.graph import build_graph

            g = build_graph(dm, GraphParams(d_select=0.2))
            cliques = maximal_cliques(g)
            if sorted(cliques) == sorted(groups):
                hits += 1
        assert hits >= 95, f"groups recovered in only {hits}/100 seeds"


def test_c04_mds_exactness():
    rng = np.random.default_rng(404)
    with criterion(4, "classical MDS exact on planted 2D configurations", 5.0):
        for _ in range(50):
            n = int(rng.integers(3, 31))
            pts = rng.random((n, 2)) * rng.uniform(0.5, 5.0)
            d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
            coords, stress = mds_embedding(d)
            assert procrustes_rms(pts, coords) <= 1e-6
            assert stress <= 1e-8


def test_c05_axis_order_quality():
    rng = np.random.default_rng(505)
    with criterion(5, "axis ordering within 10% of brute force", 30.0):
        within = 0
        for _ in range(100):
            n = int(rng.integers(6, 9))
            pts = rng.random((n, 2))
            d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
            dm = _dm(d)
            out = order_axes(range(n), dm)

            # cost self-consistency is exact
            recomputed = sum(d[out.dims[i], out.dims[i + 1]] for i in range(n - 1))
            assert out.cost == recomputed

            # 2-opt stability: no single segment reversal improves
            seq = list(out.dims)
            for i in range(n):
                for k in range(i + 1, n):
                    if i == 0 and k == n - 1:
                        continue
                    trial = seq[:i] + seq[i:k + 1][::-1] + seq[k + 1:]
                    assert oracle_path_cost(trial, d) >= out.cost - 1e-12

            _, best = oracle_best_path(list(range(n)), d)
            assert out.cost >= best - 1e-12
            if out.cost <= 1.10 * best + 1e-12:
                within += 1
        assert within >= 90, f"within 10% of optimum in only {within}/100 instances"


def test_c06_rule_mining_oracle():
    rng = np.random.default_rng(606)
    directions = ["label_to_range", "range_to_label", "both"]
    with criterion(6, "rule mining vs brute-force counter", 10.0):
        for trial in range(100):
            m = int(rng.integers(8, 51))
            n = int(rng.integers(2, 11))
            b = int(rng.integers(2, 9))
            n_labels = int(rng.integers(2, 6))
            values = np.round(rng.random((m, n)) * 10, 2)
            values[rng.random((m, n)) < 0.08] = np.nan
            labels = [
                None if rng.random() < 0.08 else f"L{int(rng.integers(n_labels))}"
                for _ in range(m)
            ]
            ds = dataset_from_arrays("r", values, categorical={"lab": labels})
            t_sup = float(rng.uniform(0.0, 0.25))
            t_con = float(rng.uniform(0.0, 1.0))
            direction = directions[trial % 3]
            th = RuleThresholds(t_sup, t_con, RuleDirection(direction))
            out = mine_rules(ds, BinningSpec(b), 0, th)
            got = {
                (r.direction.value, r.label, r.dim, r.bin,
                 round(r.support, 12), round(r.confidence, 12))
                for r in out.rules
            }
            items = [[None if np.isnan(v) else float(v) for v in row] for row in values]
            bounds = [
                (None, None) if d.constant else (d.vmin, d.vmax) for d in ds.numeric_dims
            ]
            want = oracle_mine_rules(items, labels, bounds, b, t_sup, t_con, direction)
            assert got == want

            # monotonicity: lowering both thresholds never removes a rule
            lower = mine_rules(
                ds, BinningSpec(b), 0,
                RuleThresholds(t_sup / 2, t_con / 2, RuleDirection(direction)),
            )
            lower_keys = {
                (r.direction.value, r.label, r.dim, r.bin,
                 round(r.support, 12), round(r.confidence, 12))
                for r in lower.rules
            }
            assert got <= lower_keys


def test_c07_sampling_invariants():
    rng = np.random.default_rng(707)
    with criterion(7, "dimension sampling invariants", 5.0):
        for _ in range(100):
            n = int(rng.integers(4, 20))
            pts = rng.random((n, 3))
            d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
            dm = _dm(d)
            d_select = float(rng.uniform(0.05, 1.0))
            d_remove = float(rng.uniform(0.0, d_select * 0.999))
            params = GraphParams(
                d_select=d_select, d_remove=d_remove,
                sampling_seed=int(rng.integers(10_000)),
            )
            visible, hidden = sample_dimensions(dm, params)
            for a, b in itertools.combinations(visible, 2):
                assert not d[a, b] < d_remove
            for h, rep in hidden.items():
                assert rep in visible
                assert d[h, rep] < d_remove
            assert sample_dimensions(dm, params) == (visible, hidden)


def test_c08_merge_rule_exhaustive():
    with criterion(8, "panel merge iff exactly one shared dim", 1.0):
        base = (0, 1, 2, 3)
        for overlap in range(4):
            other = tuple(sorted(set(range(4 - overlap, 8 - overlap))))
            shared = set(base) & set(other)
            assert len(shared) == overlap
            panels = merge_panels([base, other])
            if overlap == 1:
                assert len(panels) == 1
                assert panels[0].junctions == tuple(shared)
            else:
                assert len(panels) == 2
        chain = [(0, 1), (1, 2), (2, 3)]
        merged = merge_panels(chain)
        assert len(merged) == 1
        assert merged[0].dims == {0, 1, 2, 3}


@pytest.fixture(scope="module")
def scale_csv(tmp_path_factory):
    # the integer-coded annotation column needs the sidecar to stay categorical
    root = tmp_path_factory.mktemp("scale")
    path = root / "scale.csv"
    schema = root / "scale.schema.json"
    write_csv(scale_fixture(), path, schema_path=schema)
    return path, schema


def test_c09_scaling_at_large_size(scale_csv, tmp_path):
    with criterion(9, "948x933 precompute, cache, and slider latency", 120.0):
        csv_path, schema_path = scale_csv
        ds = load_csv(csv_path, schema=str(schema_path))  # must load without error
        assert (ds.m, ds.n_v, ds.n_c) == (933, 948, 2)

        t0 = time.perf_counter()
        dm = distance_matrix(ds, DistanceMetric.ABSOLUTE)
        precompute_s = time.perf_counter() - t0
        assert precompute_s < 60.0, f"precompute took {precompute_s:.1f}s"

        cache = tmp_path / "scale.cache"
        save_distance_cache(dm, cache)
        t0 = time.perf_counter()
        back = load_distance_cache(cache, ds)
        load_s = time.perf_counter() - t0
        assert back.values.tobytes() == dm.values.tobytes()
        assert np.array_equal(back.defined, dm.defined)
        assert load_s < 1.0, f"cache load took {load_s:.2f}s"

        # dimension sampling at scale: each planted 4-dim group collapses to
        # one representative once d_remove exceeds the within-group distance
        visible, hidden = sample_dimensions(
            back, GraphParams(d_select=0.3, d_remove=0.15, sampling_seed=1)
        )
        grouped = set(range(48))  # 12 groups of 4 lead the dim order
        visible_grouped = [j for j in visible if j in grouped]
        assert len(visible_grouped) == 12
        for h, rep in hidden.items():
            assert back.values[h, rep] < 0.15

        session = Session(ds, dm=back, config=SessionConfig(d_select=0.15))
        try:
            warm = session.view()  # first build pays the one-off MDS layout
            assert warm["panels"], "planted groups should appear as panels"
            t0 = time.perf_counter()
            session.apply({"type": "SetDSelect", "value": 0.18})
            view = session.view()
            slider_s = time.perf_counter() - t0
            assert view["revision"] == 1
            assert slider_s < 1.0, f"slider event took {slider_s:.2f}s"
        finally:
            session.stop()
        print(f"    precompute {precompute_s:.2f}s, cache load {load_s:.2f}s, "
              f"slider {slider_s:.3f}s, panels {len(view['panels'])}")


EVENT_SCRIPT = [
    {"type": "SetDSelect", "value": 0.45},
    {"type": "SetOpacity", "value": 0.8},
    {"type": "SetDRemove", "value": 0.02},
    {"type": "SetCatDim", "dim": 0},
    {"type": "SetColorSource", "source": "categorical"},
    {"type": "SetRuleThresholds", "t_sup": 0.05, "t_con": 0.5, "direction": "range_to_label"},
    {"type": "SetMode", "mode": "label_rules"},
    {"type": "SetRuleThresholds", "t_sup": 0.1, "t_con": 0.8, "direction": "both"},
    {"type": "RectExcludeDims", "dims": [3]},
    {"type": "SetMode", "mode": "distance_cliques"},
    {"type": "SetDSelect", "value": 0.6},
    {"type": "RectIncludeDims", "dims": [3]},
    {"type": "SetColorSource", "source": "kmeans", "k": 3, "seed": 5},
    {"type": "SetOpacity", "value": 0.33},
    {"type": "SetDRemove", "value": 0.0},
    {"type": "ClearOverrides"},
    {"type": "SetDSelect", "value": 0.5},
    {"type": "SetCatDim", "dim": 0},
    {"type": "SetColorSource", "source": "categorical"},
    {"type": "SetMode", "mode": "label_rules"},
]


def _replay_script():
    ds = two_pair_fixture()
    session = Session(ds, dm=distance_matrix(ds), config=SessionConfig(d_select=0.5))
    try:
        with TestClient(create_app(session)) as client:
            for event in EVENT_SCRIPT:
                r = client.post("/api/event", json=event)
                assert r.status_code == 200, r.text
            final = client.get("/api/view")
            assert final.status_code == 200
            return final.content
    finally:
        session.stop()


def test_c10_end_to_end_determinism():
    with criterion(10, "20-event replay is byte-identical", 30.0):
        assert len(EVENT_SCRIPT) == 20
        first = _replay_script()
        second = _replay_script()
        assert first == second
        assert canonical_json(__import__("json").loads(first)) == first.decode()
