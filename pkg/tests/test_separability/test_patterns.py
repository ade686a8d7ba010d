import math

import numpy as np
import pytest

from capcover.core.exceptions import UnsupportedSizeError
from capcover.core.exceptions import ValidationError
from capcover.separability import MAX_PATTERN_CAPS
from capcover.separability import SignPattern
from capcover.separability import caps_intersect
from capcover.separability import count_patterns
from capcover.separability import enumerate_patterns
from capcover.separability import overlap_components
from capcover.sphere import Cap


@pytest.mark.parametrize("signs", [(), (1, 0), (2, -1)])
def test_sign_pattern_rejects(signs):
    with pytest.raises(ValidationError):
        SignPattern(signs)


def test_sign_pattern_helpers():
    pattern = SignPattern((-1, 1, -1))
    assert pattern.negated().signs == (1, -1, 1)
    assert pattern.canonical().signs == (1, -1, 1)
    assert pattern.minus_count == 2
    assert not pattern.is_constant
    assert SignPattern.all_plus(3).is_constant
    assert len(pattern) == 3
    np.testing.assert_array_equal(pattern.as_array(), [-1.0, 1.0, -1.0])


def test_enumerate_patterns_order():
    patterns = [pattern.signs for pattern in enumerate_patterns(3)]
    assert patterns == [(1, -1, 1), (1, 1, -1), (1, -1, -1)]


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_enumerate_patterns_count(n):
    patterns = list(enumerate_patterns(n))
    assert len(patterns) == count_patterns(n) == 2 ** (n - 1) - 1
    assert all(pattern.signs[0] == 1 and not pattern.is_constant for pattern in patterns)
    assert len({pattern.signs for pattern in patterns}) == len(patterns)


def test_enumerate_patterns_over_components():
    patterns = [pattern.signs for pattern in enumerate_patterns(4, [[0, 2], [1], [3]])]
    assert patterns == [(1, -1, 1, 1), (1, 1, 1, -1), (1, -1, 1, -1)]


def test_enumerate_patterns_size_limit():
    with pytest.raises(UnsupportedSizeError, match="n <= 30"):
        enumerate_patterns(MAX_PATTERN_CAPS + 1)


def test_caps_intersect_tangent():
    first = Cap([1.0, 0.0, 0.0], math.pi / 6)
    second = Cap([0.5, math.sqrt(3) / 2, 0.0], math.pi / 6)
    assert caps_intersect(first, second)
    assert not caps_intersect(first, Cap([0.0, 1.0, 0.0], math.pi / 6))


def test_overlap_components():
    caps = [
        Cap([1.0, 0.0, 0.0], 0.1),
        Cap([0.0, 0.0, 1.0], 0.1),
        Cap([math.cos(0.15), math.sin(0.15), 0.0], 0.1),
        Cap([0.0, 0.0, -1.0], 0.1),
    ]
    assert overlap_components(caps) == [[0, 2], [1], [3]]


@pytest.mark.parametrize("gap, joined", [(0.0, True), (-1e-6, True), (5e-10, False), (1e-6, False)])
def test_overlap_components_near_tangent_pair(gap, joined):
    angle = math.pi / 6 + gap
    caps = [Cap([1.0, 0.0, 0.0], math.pi / 12), Cap([math.cos(angle), math.sin(angle), 0.0], math.pi / 12)]
    assert caps_intersect(*caps) is (gap <= 1e-9)
    assert (overlap_components(caps) == [[0, 1]]) is joined
