import numpy as np
import pytest

from capcover.bang import a_w_forms
from capcover.bang import bang_set_array
from capcover.bang import in_A_w
from capcover.bang import in_bang_cell
from capcover.bang import is_max_in_translate
from capcover.bang import max_in_translate_gap
from capcover.bang import outside_planks
from capcover.core.exceptions import ValidationError
from capcover.separability import SignPattern

W1 = np.array([[0.5, 0.0]])
PLUS = SignPattern((1,))


@pytest.mark.parametrize("t, expected", [([-0.5, 0.0], True), ([0.5, 0.0], False)])
def test_is_max_in_translate_single_vector(t, expected):
    assert is_max_in_translate(np.array(t), PLUS, W1) is expected


@pytest.mark.parametrize("t, expected", [([-0.5, 0.0], True), ([0.5, 0.0], False)])
def test_in_bang_cell_single_vector(t, expected):
    assert in_bang_cell(np.array(t), PLUS, W1) is expected


def test_in_bang_cell_batch():
    result = in_bang_cell(np.array([[-0.5, 0.0], [0.5, 0.0], [-0.7, 0.3]]), PLUS, W1)
    np.testing.assert_array_equal(result, [True, False, True])


def test_gap_agrees_with_predicate():
    rng = np.random.default_rng(2)
    vectors = rng.uniform(-0.3, 0.3, size=(4, 2))
    pattern = SignPattern((1, -1, 1, 1))
    ts = rng.uniform(-1.0, 1.0, size=(200, 2))
    gaps = max_in_translate_gap(ts, pattern, vectors)
    for t, gap in zip(ts, gaps):
        if abs(gap) > 1e-6:
            assert is_max_in_translate(t, pattern, vectors) is bool(gap >= 0)


def test_gap_matches_brute_force():
    vectors = np.array([[0.3, 0.1], [-0.1, 0.2]])
    pattern = SignPattern((1, 1))
    t = np.array([-0.6, -0.5])
    shifted = t + pattern.as_array() @ vectors
    expected = np.linalg.norm(t) - np.max(np.linalg.norm(shifted - bang_set_array(vectors), axis=1))
    assert max_in_translate_gap(t, pattern, vectors)[0] == pytest.approx(expected)


def test_outside_planks():
    vectors = np.array([[0.5, 0.0], [0.0, 0.3]])
    assert outside_planks(np.array([0.6, 0.5]), vectors)
    assert not outside_planks(np.array([0.2, 0.5]), vectors)


def test_pattern_length_mismatch():
    with pytest.raises(ValidationError, match="does not match"):
        in_bang_cell(np.zeros(2), SignPattern((1, 1)), W1)


@pytest.mark.parametrize("t, expected", [([-0.3, 0.0], True), ([0.0, 0.0], False), ([-0.5, 0.2], True)])
def test_in_A_w(t, expected):
    assert in_A_w(np.array(t), np.array([0.3, 0.0])) is expected


def test_a_w_forms_share_sign():
    rng = np.random.default_rng(3)
    for _ in range(500):
        w = rng.uniform(-0.4, 0.4, size=3)
        t = rng.uniform(-0.5, 0.5, size=3)
        halfspace, distance = a_w_forms(t, w)
        if min(abs(halfspace), abs(distance)) > 1e-9:
            assert (halfspace >= 0) == (distance >= 0)


def test_in_A_w_rejects_outside_ball():
    with pytest.raises(ValidationError, match="open unit ball"):
        in_A_w(np.array([1.0, 0.0]), np.array([0.3, 0.0]))
