import math

import numpy as np
import pytest

from capcover.core.exceptions import ValidationError
from capcover.sphere import Cap
from capcover.sphere import Instance
from capcover.sphere import Zone
from capcover.sphere import apply_rotation
from capcover.sphere import cap_contains_point
from capcover.sphere import fibonacci_sphere
from capcover.sphere import point_at_distance
from capcover.sphere import random_point_in_cap
from capcover.sphere import random_rotation
from capcover.sphere import sample_cap
from capcover.sphere import sample_sphere
from capcover.sphere import sample_zone
from capcover.sphere import spherical_distance
from capcover.sphere import zone_contains_point


@pytest.mark.parametrize("dim", [1, 2, 4])
def test_sample_sphere_unit_norm(dim):
    points = sample_sphere(dim, 100, rng=1)
    assert points.shape == (100, dim + 1)
    np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0, atol=1e-12)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_sample_cap_inside(dim):
    center = np.zeros(dim + 1)
    center[-1] = 1.0
    cap = Cap(center, 0.4)
    points = sample_cap(cap, 500, rng=2)
    assert points.shape == (500, dim + 1)
    assert np.all(cap_contains_point(cap, points))


def test_sample_cap_is_area_uniform_on_s2():
    cap = Cap([0.0, 0.0, 1.0], 1.0)
    points = sample_cap(cap, 20000, rng=3)
    inner = Cap([0.0, 0.0, 1.0], 0.5)
    area_ratio = (1 - math.cos(0.5)) / (1 - math.cos(1.0))
    assert np.mean(cap_contains_point(inner, points)) == pytest.approx(area_ratio, abs=0.02)


def test_sample_zone_inside():
    zone = Zone([0.0, 1.0, 0.0], 0.2)
    points = sample_zone(zone, 300, rng=4)
    assert points.shape == (300, 3)
    assert np.all(zone_contains_point(zone, points))


def test_point_at_distance():
    center = np.array([0.0, 0.0, 1.0])
    point = point_at_distance(center, 0.3, rng=5)
    assert spherical_distance(center, point) == pytest.approx(0.3, abs=1e-12)


def test_random_point_in_cap_is_seeded():
    cap = Cap([1.0, 0.0, 0.0], 0.2)
    np.testing.assert_array_equal(random_point_in_cap(cap, seed=7), random_point_in_cap(cap, seed=7))


def test_random_rotation_is_special_orthogonal():
    rotation = random_rotation(3, seed=0)
    np.testing.assert_allclose(rotation @ rotation.T, np.eye(4), atol=1e-12)
    assert np.linalg.det(rotation) == pytest.approx(1.0)


def test_random_rotation_rejects_dim():
    with pytest.raises(ValidationError):
        random_rotation(0)


def test_apply_rotation_preserves_distances():
    instance = Instance.from_arrays([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], [0.1, 0.2])
    rotated = apply_rotation(random_rotation(2, seed=1), instance)
    np.testing.assert_allclose(rotated.radii, instance.radii)
    assert spherical_distance(*rotated.centers) == pytest.approx(math.pi / 2, abs=1e-12)


def test_apply_rotation_rejects_shape():
    instance = Instance.from_arrays([[1.0, 0.0, 0.0]], [0.1])
    with pytest.raises(ValidationError, match="does not act"):
        apply_rotation(np.eye(4), instance)


def test_fibonacci_sphere_slices():
    grid = fibonacci_sphere(50)
    assert grid.shape == (50, 3)
    np.testing.assert_allclose(np.linalg.norm(grid, axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(fibonacci_sphere(50, start=10, stop=20), grid[10:20])
