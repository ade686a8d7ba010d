import math

import numpy as np
import pytest

from capcover.core.exceptions import ValidationError
from capcover.cover import CoverOptions
from capcover.cover import cover_caps
from capcover.oracle import distance_outside
from capcover.oracle import sampled_containment
from capcover.oracle import verify_cover
from capcover.oracle import zone_criterion_harness
from capcover.sphere import Cap
from capcover.sphere import Zone
from capcover.sphere import cap_contains_cap

E3 = np.array([0.0, 0.0, 1.0])


def _tilted(angle: float) -> np.ndarray:
    return np.array([math.sin(angle), 0.0, math.cos(angle)])


def test_identity_passes():
    cap = Cap(E3, 0.5)
    report = sampled_containment(cap, cap, samples=5000)
    assert report.passed
    assert report.checked == 5000
    assert report.max_violation <= 0


def test_nested_caps_pass():
    outer = Cap(E3, math.pi / 3)
    inner = Cap(_tilted(math.pi / 6 - 0.01), math.pi / 6)
    assert cap_contains_cap(outer, inner)
    assert sampled_containment(outer, inner, samples=20_000, seed=1).passed


def test_shrunk_outer_fails_with_witness():
    outer = Cap(E3, math.pi / 3)
    inner = Cap(_tilted(math.pi / 6 + 0.01), math.pi / 6)
    report = sampled_containment(outer, inner, samples=20_000, seed=2, max_witnesses=3)
    assert not report.passed
    assert 1 <= len(report.witnesses) <= 3
    assert report.max_violation > 0
    assert np.all(distance_outside(outer, np.stack(report.witnesses)) > 0)


def test_zone_containment():
    outer = Zone(E3, math.pi / 3)
    assert sampled_containment(outer, Zone(_tilted(math.pi / 6 - 0.01), math.pi / 6), samples=20_000).passed
    assert not sampled_containment(outer, Zone(_tilted(math.pi / 6 + 0.05), math.pi / 6), samples=20_000).passed


def test_samples_are_reproducible():
    outer = Cap(E3, 0.3)
    inner = Cap(_tilted(0.2), 0.2)
    first = sampled_containment(outer, inner, samples=2000, seed=5)
    second = sampled_containment(outer, inner, samples=2000, seed=5)
    assert first.max_violation == second.max_violation
    assert len(first.witnesses) == len(second.witnesses)


def test_distance_outside():
    np.testing.assert_allclose(distance_outside(Cap(E3, 0.5), np.stack([E3, -E3])), [-0.5, math.pi - 0.5])
    outside = distance_outside(Zone(E3, 0.5), np.stack([E3, [1.0, 0.0, 0.0]]))
    np.testing.assert_allclose(outside, [1.0708, -0.5], atol=1e-4)


def test_rejects_dimension_mismatch():
    with pytest.raises(ValidationError, match="S\\^2 and S\\^1"):
        sampled_containment(Cap(E3, 0.1), Cap([1.0, 0.0], 0.1))


def test_rejects_sample_count():
    with pytest.raises(ValidationError, match="samples"):
        sampled_containment(Cap(E3, 0.1), Cap(E3, 0.1), samples=0)


def test_verify_cover(tangent_chain_instance):
    certificate = cover_caps(tangent_chain_instance, CoverOptions(n_jobs=1))
    report = verify_cover(certificate.cover_cap, tangent_chain_instance.caps, samples=5000)
    assert report.passed
    assert report.details["analytic_failures"] == 0


def test_verify_cover_detects_short_radius(tangent_chain_instance):
    certificate = cover_caps(tangent_chain_instance, CoverOptions(n_jobs=1))
    short = Cap(certificate.cover_cap.center, certificate.cover_cap.radius - 0.02)
    report = verify_cover(short, tangent_chain_instance.caps, samples=5000)
    assert not report.passed
    assert report.details["analytic_failures"] == 2
    assert {witness["cap"] for witness in report.witnesses} == {0, 2}


@pytest.mark.parametrize("dim", [2, 3])
def test_zone_criterion_agrees_with_sampling(dim):
    report = zone_criterion_harness(pairs=12, samples=5000, seed=0, dim=dim)
    assert report.passed
    assert report.checked + report.details["excluded"] == 12
