import json
import re

import numpy as np
import pytest

from dimscope.cli import main
from dimscope.dataset import write_csv
from dimscope.jsonutil import canonical_json
from dimscope.synth import two_pair_fixture


@pytest.fixture()
def fixture_csv(tmp_path):
    path = tmp_path / "pairs.csv"
    write_csv(two_pair_fixture(), path)
    return path


def test_precompute_then_cache_hit(fixture_csv, tmp_path, caplog):
    cache = tmp_path / "pairs.cache"
    assert main(["precompute", str(fixture_csv), "-o", str(cache)]) == 0
    assert cache.exists()
    # snapshot with the same cache path must log a hit instead of recomputing
    out = tmp_path / "snap.svg"
    with caplog.at_level("INFO", logger="dimscope"):
        assert main([
            "snapshot", str(fixture_csv), "--cache", str(cache),
            "--d-select", "0.5", "-o", str(out),
        ]) == 0
    assert any("cache hit" in r.message for r in caplog.records)


def test_snapshot_structure(fixture_csv, tmp_path):
    out = tmp_path / "snap.svg"
    assert main(["snapshot", str(fixture_csv), "--d-select", "0.5", "-o", str(out)]) == 0
    svg = out.read_text()
    assert svg.startswith("<svg")
    assert len(re.findall(r'<g id="panel-\d+">', svg)) == 2
    assert len(re.findall(r'<circle class="dot"', svg)) == 4
    assert '<g id="dimension-graph"' in svg
    assert "<polyline" in svg


def test_snapshot_rules_mode(fixture_csv, tmp_path):
    out = tmp_path / "rules.svg"
    code = main([
        "snapshot", str(fixture_csv), "--d-select", "0.5",
        "--mode", "rules", "--cat", "band", "--tsup", "0.05", "--tcon", "0.6",
        "-o", str(out),
    ])
    assert code == 0
    assert "label:" in out.read_text()


def test_rules_export(fixture_csv, tmp_path):
    out = tmp_path / "rules.json"
    code = main([
        "rules", str(fixture_csv), "--cat", "band",
        "--tsup", "0.0", "--tcon", "0.9", "--bins", "4",
        "-o", str(out),
    ])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["rules"]
    for row in payload["rules"]:
        assert set(row) == {
            "label", "categorical_dim", "dim", "bin", "range",
            "support", "confidence", "direction",
        }
        assert row["confidence"] >= 0.9
    assert out.read_text() == canonical_json(payload)


def test_rules_perfect_separation(tmp_path):
    # all 20 A-items in the bottom bin of dim 0 -> support 0.2, confidence 1.0
    from dimscope.synth import dataset_from_arrays

    values = np.concatenate([np.linspace(0.0, 0.9, 20), np.linspace(5.0, 8.0, 80)])
    ds = dataset_from_arrays(
        "sep",
        np.column_stack([values, np.linspace(0, 1, 100)]),
        categorical={"lab": ["A"] * 20 + ["B"] * 80},
    )
    csv_path = tmp_path / "sep.csv"
    write_csv(ds, csv_path)
    out = tmp_path / "rules.json"
    main([
        "rules", str(csv_path), "--cat", "lab",
        "--tsup", "0.15", "--tcon", "0.95", "--bins", "8", "-o", str(out),
    ])
    rows = json.loads(out.read_text())["rules"]
    hit = [r for r in rows if r["label"] == "A" and r["dim"] == "v0" and r["bin"] == 0]
    assert len(hit) == 1
    assert hit[0]["support"] == pytest.approx(0.2)
    assert hit[0]["confidence"] == 1.0


def test_unknown_cat_column_fails(fixture_csv, tmp_path):
    code = main([
        "rules", str(fixture_csv), "--cat", "nope",
        "--tsup", "0.1", "--tcon", "0.1", "-o", str(tmp_path / "x.json"),
    ])
    assert code == 1


def test_missing_file_fails(tmp_path):
    code = main(["precompute", str(tmp_path / "absent.csv"), "-o", str(tmp_path / "c")])
    assert code == 1


def test_port_env_override(monkeypatch):
    from dimscope.cli import resolve_port

    monkeypatch.delenv("DIMSCOPE_PORT", raising=False)
    assert resolve_port(8765) == 8765
    monkeypatch.setenv("DIMSCOPE_PORT", "9001")
    assert resolve_port(8765) == 9001
    monkeypatch.setenv("DIMSCOPE_PORT", "what")
    from dimscope.errors import DimscopeError

    with pytest.raises(DimscopeError):
        resolve_port(8765)
