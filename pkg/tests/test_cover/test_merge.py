import math

import numpy as np
import pytest

from capcover.core.exceptions import InternalInvariantError
from capcover.core.exceptions import ValidationError
from capcover.cover import merge_slacks
from capcover.cover import merge_zones
from capcover.sphere import Zone
from capcover.sphere import plank_vector
from capcover.sphere import zone_contains_zone
from capcover.sphere import zone_slack

E1 = np.array([1.0, 0.0, 0.0])


def test_identical_zones():
    alpha = 0.3
    zones = [Zone(E1, alpha), Zone(E1, alpha)]
    merged = merge_zones(zones, [alpha, alpha], 2 * math.sin(alpha) * E1)
    np.testing.assert_allclose(merged.normal, E1)
    assert merged.half_width == pytest.approx(2 * alpha)
    assert all(zone_contains_zone(merged, zone) for zone in zones)


def test_zones_at_angle_merge_tightly():
    alpha = math.pi / 6
    zones = [
        Zone([math.cos(alpha), -math.sin(alpha), 0.0], alpha),
        Zone([math.cos(alpha), math.sin(alpha), 0.0], alpha),
    ]
    w = sum(plank_vector(zone).w for zone in zones)
    assert np.linalg.norm(w) == pytest.approx(math.sin(math.pi / 3))
    merged = merge_zones(zones, [alpha, alpha], w)
    np.testing.assert_allclose(merged.normal, E1, atol=1e-12)
    assert merged.half_width == pytest.approx(math.pi / 3)
    for zone in zones:
        assert zone_slack(merged, zone) == pytest.approx(0.0, abs=1e-12)


def test_member_vectors_signed_along_merged_sum():
    alpha = 0.2
    zones = [Zone(E1, alpha), Zone(-E1, alpha)]
    merged = merge_zones(zones, [alpha, alpha], 2 * math.sin(alpha) * E1)
    assert merged.half_width == pytest.approx(0.4)


def test_rejects_short_merged_sum():
    alpha = math.pi / 6
    zones = [Zone(E1, alpha), Zone([0.0, 1.0, 0.0], alpha)]
    w = sum(plank_vector(zone).w for zone in zones)
    with pytest.raises(InternalInvariantError, match="preconditions"):
        merge_zones(zones, [alpha, alpha], w)


def test_rejects_far_member():
    alpha = math.pi / 6
    zones = [Zone(E1, alpha), Zone(E1, alpha)]
    w = np.array([math.cos(0.1), math.sin(0.1), 0.0])
    norm_slack, member_slacks = merge_slacks([alpha, alpha], w, np.stack([0.5 * E1, 0.5 * E1]))
    assert norm_slack >= 0
    assert min(member_slacks) < -1e-6
    with pytest.raises(InternalInvariantError, match="preconditions"):
        merge_zones(zones, [alpha, alpha], w)


@pytest.mark.parametrize("count", [0, 1])
def test_needs_two_zones(count):
    with pytest.raises(ValidationError, match="at least two zones"):
        merge_zones([Zone(E1, 0.1)] * count, [0.1] * count, E1)


def test_half_width_count_checked():
    with pytest.raises(ValidationError, match="half-widths"):
        merge_zones([Zone(E1, 0.1), Zone(E1, 0.1)], [0.1], E1)


def test_merged_width_below_half_pi():
    zones = [Zone(E1, 0.8), Zone(E1, 0.8)]
    with pytest.raises(InternalInvariantError, match="reaches pi/2"):
        merge_zones(zones, [0.8, 0.8], 2 * math.sin(0.8) * E1)
