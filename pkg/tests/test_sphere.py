import numpy as np
import pytest

from spheredesign.errors import ConditionError, DataError
from spheredesign.sphere import (PointSet, SpherePoint, as_coords, dot,
                                 sample_uniform)


def test_point_accepts_unit_vector():
    p = SpherePoint([0.0, 0.0, 1.0])
    assert p.dim == 2
    assert not p.coords.flags.writeable


def test_point_rejects_off_sphere():
    with pytest.raises(DataError):
        SpherePoint([1.0, 1.0, 1.0])
    with pytest.raises(DataError):
        SpherePoint([0.5, 0.0, 0.0])


def test_point_rejects_bad_shape():
    with pytest.raises(DataError):
        SpherePoint([1.0])
    with pytest.raises(DataError):
        SpherePoint(np.eye(3))


def test_point_renormalizes_tiny_drift():
    # within 1e-12 the norm is silently repaired
    p = SpherePoint([1.0 + 3e-13, 0.0, 0.0])
    assert np.linalg.norm(p.coords) == pytest.approx(1.0, abs=1e-15)


def test_point_equality():
    a = SpherePoint([1.0, 0.0])
    b = SpherePoint([1.0, 1e-13])
    c = SpherePoint([0.0, 1.0])
    assert a == b
    assert a != c
    assert a != "not a point"


def test_pointset_basics():
    ps = PointSet(np.eye(3))
    assert len(ps) == 3
    assert ps.dim == 2
    assert ps[1] == SpherePoint([0.0, 1.0, 0.0])
    assert sum(1 for _ in ps) == 3
    assert not ps.coords.flags.writeable


def test_pointset_rejects_off_sphere_row():
    coords = np.eye(3)
    coords[2, 2] = 1.5
    with pytest.raises(DataError, match="point 2"):
        PointSet(coords)


def test_pointset_rejects_bad_shape():
    with pytest.raises(DataError):
        PointSet(np.ones(4))
    with pytest.raises(DataError):
        PointSet(np.ones((3, 1)))


def test_as_coords_passthrough():
    ps = PointSet(np.eye(3))
    assert as_coords(ps) is ps.coords
    assert as_coords(ps[0]) is not None
    arr = np.eye(3)
    assert np.array_equal(as_coords(arr), arr)


def test_dot_shapes_and_clipping():
    x = PointSet(np.eye(3))
    y = PointSet(-np.eye(3))
    m = dot(x, y)
    assert m.shape == (3, 3)
    assert np.all(m >= -1.0) and np.all(m <= 1.0)
    # vector vs matrix and vector vs vector
    v = dot(x[0], y)
    assert v.shape == (3,)
    assert dot(x[0], x[0]) == pytest.approx(1.0)


def test_dot_rejects_dimension_mismatch():
    with pytest.raises(ConditionError):
        dot(np.array([1.0, 0.0]), np.array([1.0, 0.0, 0.0]))


def test_dot_clips_roundoff():
    # rounding can push a product just past 1; it must come back clipped
    v = np.array([0.6, 0.8, 0.0])
    assert dot(v, v) <= 1.0


def test_sample_uniform_deterministic():
    a = sample_uniform(2, 50, seed=7)
    b = sample_uniform(2, 50, seed=7)
    c = sample_uniform(2, 50, seed=8)
    assert np.array_equal(a.coords, b.coords)
    assert not np.array_equal(a.coords, c.coords)


def test_sample_uniform_on_sphere():
    ps = sample_uniform(3, 200, seed=1)
    assert ps.dim == 3
    nrm = np.linalg.norm(ps.coords, axis=1)
    np.testing.assert_allclose(nrm, 1.0, atol=1e-12)


def test_sample_uniform_symmetry():
    # each coordinate's mean vanishes like n^{-1/2}
    ps = sample_uniform(2, 4000, seed=3)
    assert np.abs(ps.coords.mean(axis=0)).max() < 5.0 / np.sqrt(4000)


def test_sample_uniform_rejects_bad_args():
    with pytest.raises(ConditionError):
        sample_uniform(0, 5, seed=0)
    with pytest.raises(ConditionError):
        sample_uniform(2, 0, seed=0)
