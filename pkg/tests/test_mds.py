import numpy as np
import pytest

from dimscope.errors import DegenerateLayout
from dimscope.mds import classical_mds, mds_embedding
from dimscope.metrics import DistanceMatrix, DistanceMetric

from oracles import procrustes_rms


def _matrix(values) -> DistanceMatrix:
    values = np.asarray(values, dtype=np.float64)
    return DistanceMatrix(
        values=values,
        metric=DistanceMetric.ABSOLUTE,
        fingerprint="test",
        defined=np.ones(values.shape[0], dtype=bool),
    )


def test_collinear_exact():
    d = np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]])
    coords, stress = mds_embedding(d)
    emb = np.sqrt(((coords[:, None, :] - coords[None, :, :]) ** 2).sum(-1))
    assert np.allclose(emb, d, atol=1e-9)
    assert stress <= 1e-9


def test_all_zero_distances():
    d = np.zeros((4, 4))
    layout = classical_mds(_matrix(d), range(4))
    assert layout.stress == 0.0
    assert all(p == (0.5, 0.5) for p in layout.positions.values())


def test_planted_configuration_recovered(rng):
    for _ in range(10):
        n = int(rng.integers(4, 31))
        pts = rng.random((n, 2)) * 3.0
        d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
        coords, stress = mds_embedding(d)
        assert procrustes_rms(pts, coords) <= 1e-6
        assert stress <= 1e-8


def test_positions_in_unit_square_with_margin(rng):
    pts = rng.random((8, 2))
    d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    layout = classical_mds(_matrix(d), range(8))
    xs = [p[0] for p in layout.positions.values()]
    ys = [p[1] for p in layout.positions.values()]
    assert min(xs + ys) >= 0.05 - 1e-12
    assert max(xs + ys) <= 0.95 + 1e-12
    # aspect preserved: the longer axis spans the full margin box
    assert max(max(xs) - min(xs), max(ys) - min(ys)) == pytest.approx(0.9, abs=1e-9)


def test_permutation_invariance(rng):
    pts = rng.random((7, 2))
    d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    layout = classical_mds(_matrix(d), range(7))

    perm = rng.permutation(7)
    shuffled = d[np.ix_(perm, perm)]
    layout2 = classical_mds(_matrix(shuffled), range(7))
    for new_id, old_id in enumerate(perm):
        assert layout2.positions[new_id] == pytest.approx(layout.positions[old_id], abs=1e-9)


def test_deterministic_output(rng):
    pts = rng.random((9, 2))
    d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    a = classical_mds(_matrix(d), range(9))
    b = classical_mds(_matrix(d), range(9))
    assert a.positions == b.positions
    assert a.stress == b.stress


def test_degenerate_layout():
    with pytest.raises(DegenerateLayout):
        classical_mds(_matrix(np.zeros((3, 3))), [1])


def test_non_euclidean_input_reports_stress():
    # violates the triangle inequality; embedding must stay finite
    d = np.array(
        [
            [0.0, 1.0, 1.0, 1.0],
            [1.0, 0.0, 1.0, 1.0],
            [1.0, 1.0, 0.0, 3.0],
            [1.0, 1.0, 3.0, 0.0],
        ]
    )
    coords, stress = mds_embedding(d)
    assert np.isfinite(coords).all()
    assert stress > 0.0
