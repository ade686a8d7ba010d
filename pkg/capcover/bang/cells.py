import math
from typing import Union

import numpy as np

from capcover.bang.bang_set import _check_size
from capcover.bang.bang_set import _max_translate_norm2
from capcover.bang.bang_set import bang_set_array
from capcover.core.exceptions import DiagnosticError
from capcover.core.exceptions import ValidationError
from capcover.separability import SignPattern
from capcover.sphere import EPS_GEOM
from capcover.sphere import as_vector_array

BoolOrArray = Union[bool, np.ndarray]


def _pattern_sum(x_pattern: SignPattern, vectors: np.ndarray) -> np.ndarray:
    if len(x_pattern) != vectors.shape[0]:
        raise ValidationError(f"Pattern of length {len(x_pattern)} does not match {vectors.shape[0]} vectors")
    return x_pattern.as_array() @ vectors


def _as_points(t, size: int) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if t.shape[-1] != size:
        raise ValidationError(f"Point of length {t.shape[-1]} does not match vectors of length {size}")
    return t


def is_max_in_translate(t, x_pattern: SignPattern, vectors) -> bool:
    """Check that ``t`` has maximal norm in ``t + x - L`` (up to ``EPS_GEOM``), ``x = sum eps_i w_i``.

    The Bang set L is enumerated in a compiled Gray-code loop.
    """
    vectors = np.ascontiguousarray(as_vector_array(vectors))
    _check_size(vectors.shape[0])
    t = _as_points(t, vectors.shape[1])
    base = np.ascontiguousarray(t + _pattern_sum(x_pattern, vectors))
    return float(np.linalg.norm(t)) >= math.sqrt(_max_translate_norm2(base, vectors)) - EPS_GEOM


def max_in_translate_gap(ts, x_pattern: SignPattern, vectors) -> np.ndarray:
    """Return ``|t| - max_{y in L} |t + x - y|`` for every row of ``ts``; nonnegative iff ``t`` is maximal."""
    vectors = as_vector_array(vectors)
    ts = np.atleast_2d(_as_points(ts, vectors.shape[1]))
    bang = bang_set_array(vectors)
    shifted = ts + _pattern_sum(x_pattern, vectors)
    farthest = np.linalg.norm(shifted[:, None, :] - bang[None, :, :], axis=2).max(axis=1)
    return np.linalg.norm(ts, axis=1) - farthest


def in_bang_cell(t, x_pattern: SignPattern, vectors) -> BoolOrArray:
    """Check ``<t, -eps_i w_i> >= <w_i, w_i> - EPS_GEOM`` for all i, for a point or each row of a batch."""
    vectors = as_vector_array(vectors)
    t = _as_points(t, vectors.shape[1])
    signed = x_pattern.as_array()[:, None] * vectors
    lhs = -(t @ signed.T)
    result = np.all(lhs >= np.sum(vectors ** 2, axis=1) - EPS_GEOM, axis=-1)
    return bool(result) if np.ndim(result) == 0 else result


def outside_planks(t, vectors) -> BoolOrArray:
    """Check that ``t`` lies outside every open plank ``{x : |<x, w_i>| < <w_i, w_i>}`` (up to ``EPS_GEOM``)."""
    vectors = as_vector_array(vectors)
    t = _as_points(t, vectors.shape[1])
    result = np.all(np.abs(t @ vectors.T) >= np.sum(vectors ** 2, axis=1) - EPS_GEOM, axis=-1)
    return bool(result) if np.ndim(result) == 0 else result


def a_w_forms(t, w) -> tuple:
    """Both slacks of the A_w membership: ``<t, -w> - <w, w>`` and ``|t| - |t + 2w|``."""
    t = np.asarray(t, dtype=float)
    w = np.asarray(w, dtype=float)
    halfspace = float(-(t @ w) - w @ w)
    distance = float(np.linalg.norm(t) - np.linalg.norm(t + 2 * w))
    return halfspace, distance


def in_A_w(t, w) -> bool:  # noqa: N802
    """Check membership of ``t`` in ``A_w = {t in B : <t, -w> >= <w, w>}``.

    The equivalent form ``|t| >= |t + 2w|`` is evaluated too; the two slacks always share their sign, so
    contradicting decisions with both slacks beyond ``EPS_GEOM`` mean broken arithmetic.

    Raises
    ------
    ValidationError:
        if ``t`` is not in the open unit ball
    DiagnosticError:
        if the two forms disagree beyond tolerance
    """
    t = np.asarray(t, dtype=float)
    if not np.linalg.norm(t) < 1.0:
        raise ValidationError(f"Point should lie in the open unit ball, |t| = {np.linalg.norm(t)!r}")
    halfspace, distance = a_w_forms(t, w)
    first = halfspace >= -EPS_GEOM
    second = distance >= -EPS_GEOM
    if first != second and min(abs(halfspace), abs(distance)) > EPS_GEOM:
        raise DiagnosticError(
            f"A_w membership forms disagree: <t, -w> - <w, w> = {halfspace!r}, |t| - |t + 2w| = {distance!r}"
        )
    return first


__all__ = ["is_max_in_translate", "max_in_translate_gap", "in_bang_cell", "outside_planks", "a_w_forms", "in_A_w"]
