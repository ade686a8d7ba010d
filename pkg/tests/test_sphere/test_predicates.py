import math

import numpy as np
import pytest

from capcover.core.exceptions import ValidationError
from capcover.sphere import EPS_GEOM
from capcover.sphere import Cap
from capcover.sphere import Zone
from capcover.sphere import cap_contains_cap
from capcover.sphere import cap_contains_point
from capcover.sphere import cap_slack
from capcover.sphere import point_at_distance
from capcover.sphere import random_rotation
from capcover.sphere import spherical_distance
from capcover.sphere import zone_contains_point
from capcover.sphere import zone_contains_zone
from capcover.sphere import zone_slack

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


@pytest.mark.parametrize(
    "p, q, expected",
    [(E1, E1, 0.0), (E1, -E1, math.pi), (E1, E2, math.pi / 2), (E2, E1, math.pi / 2)],
)
def test_spherical_distance_simple_cases(p, q, expected):
    assert spherical_distance(p, q) == pytest.approx(expected, abs=1e-15)


def test_spherical_distance_batch():
    distances = spherical_distance(E1, np.stack([E1, E2, -E1]))
    np.testing.assert_allclose(distances, [0.0, math.pi / 2, math.pi], atol=1e-15)


def test_spherical_distance_dimension_mismatch():
    with pytest.raises(ValidationError, match="Dimension mismatch"):
        spherical_distance(E1, np.array([1.0, 0.0]))


def test_spherical_distance_small_angles_precise():
    angle = 1e-9
    q = np.array([math.cos(angle), math.sin(angle), 0.0])
    assert spherical_distance(E1, q) == pytest.approx(angle, rel=1e-6)


@pytest.mark.parametrize(
    "point, expected",
    [
        (E1, True),
        (E2, False),
        (np.array([math.cos(math.pi / 6), math.sin(math.pi / 6), 0.0]), True),
    ],
)
def test_cap_contains_point(point, expected):
    assert cap_contains_point(Cap(E1, math.pi / 6), point) is expected


def test_cap_contains_point_batch():
    result = cap_contains_point(Cap(E1, math.pi / 6), np.stack([E1, E2]))
    np.testing.assert_array_equal(result, [True, False])


def test_cap_contains_itself():
    cap = Cap(E3, 0.4)
    assert cap_contains_cap(cap, cap)
    assert cap_slack(cap, cap) == 0.0


@pytest.mark.parametrize("extra, expected", [(0.0, True), (0.01, False)])
def test_cap_contains_cap_tight(extra, expected):
    outer = Cap(E3, math.pi / 3)
    inner_center = np.array([math.sin(math.pi / 6 + extra), 0.0, math.cos(math.pi / 6 + extra)])
    assert cap_contains_cap(outer, Cap(inner_center, math.pi / 6)) is expected


@pytest.mark.parametrize(
    "point, expected",
    [
        (E1, True),
        (E3, False),
        (np.array([math.cos(math.pi / 6) * math.cos(0.3), math.cos(math.pi / 6) * math.sin(0.3), 0.5]), True),
    ],
)
def test_zone_contains_point(point, expected):
    assert zone_contains_point(Zone(E3, math.pi / 6), point) is expected


def test_zone_contains_zone_nested_slabs():
    assert zone_contains_zone(Zone(E3, 0.5), Zone(E3, 0.2))
    assert not zone_contains_zone(Zone(E3, 0.2), Zone(E3, 0.5))


@pytest.mark.parametrize("extra, expected", [(0.0, True), (0.01, False)])
def test_zone_contains_zone_tight(extra, expected):
    angle = math.pi / 6 + extra
    inner = Zone(np.array([math.sin(angle), 0.0, math.cos(angle)]), math.pi / 6)
    assert zone_contains_zone(Zone(E3, math.pi / 3), inner) is expected


def test_zone_slack_ignores_normal_sign():
    inner = Zone(np.array([math.sin(0.1), 0.0, -math.cos(0.1)]), 0.2)
    assert zone_slack(Zone(E3, 0.5), inner) == pytest.approx(0.2, abs=1e-12)


def test_containment_equivariant_under_rotation():
    rng = np.random.default_rng(0)
    for seed in range(20):
        rotation = random_rotation(2, seed=seed)
        outer = Cap(point_at_distance(E3, rng.uniform(0, 1), rng), rng.uniform(0.3, 1.2))
        inner = Cap(point_at_distance(outer.center, rng.uniform(0, 0.6), rng), rng.uniform(0.05, 0.5))
        rotated_outer = Cap(rotation @ outer.center / np.linalg.norm(rotation @ outer.center), outer.radius)
        rotated_inner = Cap(rotation @ inner.center / np.linalg.norm(rotation @ inner.center), inner.radius)
        if abs(cap_slack(outer, inner)) < 1e-8:
            continue
        assert cap_contains_cap(rotated_outer, rotated_inner) == cap_contains_cap(outer, inner)


def test_eps_geom_boundary():
    outer = Cap(E3, 0.5)
    angle = 0.3 + 0.5 * EPS_GEOM
    inner = Cap(np.array([math.sin(angle), 0.0, math.cos(angle)]), 0.2)
    assert cap_contains_cap(outer, inner)
