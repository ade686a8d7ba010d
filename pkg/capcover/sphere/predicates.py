import math
from typing import Union

import numpy as np

from capcover.core.exceptions import ValidationError
from capcover.sphere.constants import EPS_GEOM
from capcover.sphere.shapes import ArrayLike
from capcover.sphere.shapes import Cap
from capcover.sphere.shapes import Zone

BoolOrArray = Union[bool, np.ndarray]
FloatOrArray = Union[float, np.ndarray]


def _check_same_length(first: np.ndarray, second: np.ndarray):
    if first.shape[-1] != second.shape[-1]:
        raise ValidationError(
            f"Dimension mismatch: vectors of length {first.shape[-1]} and {second.shape[-1]} are not comparable"
        )


def spherical_distance(p: ArrayLike, q: ArrayLike) -> FloatOrArray:
    """Compute spherical (great-circle) distance between unit vectors.

    The value equals ``arccos(clip(<p, q>, -1, 1))``; it is evaluated as ``2 * atan2(|p - q|, |p + q|)``
    which keeps full precision for nearly equal and nearly antipodal points.

    Parameters
    ----------
    p:
        unit vector of shape (D,) or batch of unit vectors of shape (m, D)
    q:
        unit vector of shape (D,) or batch of unit vectors of shape (m, D)

    Returns
    -------
    :
        angle in [0, pi]; array of shape (m,) if any argument is a batch

    Raises
    ------
    ValidationError:
        if vector lengths differ

    Examples
    --------
    >>> import numpy as np
    >>> float(spherical_distance(np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))) == np.pi / 2
    True
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    _check_same_length(p, q)
    diff = np.linalg.norm(p - q, axis=-1)
    summ = np.linalg.norm(p + q, axis=-1)
    angle = 2.0 * np.arctan2(diff, summ)
    if np.ndim(angle) == 0:
        return float(angle)
    return angle


def cap_contains_point(cap: Cap, point: ArrayLike) -> BoolOrArray:
    """Check that point (or each point of a batch) lies in the closed cap up to ``EPS_GEOM``."""
    distance = spherical_distance(cap.center, point)
    result = distance <= cap.radius + EPS_GEOM
    return bool(result) if np.ndim(result) == 0 else result


def cap_slack(outer: Cap, inner: Cap) -> float:
    """Slack ``outer.radius - dist(outer.center, inner.center) - inner.radius``, nonnegative iff contained."""
    return outer.radius - spherical_distance(outer.center, inner.center) - inner.radius


def cap_contains_cap(outer: Cap, inner: Cap) -> bool:
    """Check that ``inner`` cap lies in ``outer`` cap: ``dist + inner.radius <= outer.radius + EPS_GEOM``."""
    return cap_slack(outer, inner) >= -EPS_GEOM


def zone_contains_point(zone: Zone, point: ArrayLike) -> BoolOrArray:
    """Check that ``|<point, normal>| <= sin(half_width) + EPS_GEOM`` for a point or a batch of points."""
    point = np.asarray(point, dtype=float)
    _check_same_length(zone.normal, point)
    result = np.abs(point @ zone.normal) <= math.sin(zone.half_width) + EPS_GEOM
    return bool(result) if np.ndim(result) == 0 else result


def normals_angle(first: ArrayLike, second: ArrayLike) -> float:
    """Angle between the lines spanned by two unit normals, reduced to [0, pi/2]."""
    theta = spherical_distance(first, second)
    return min(theta, math.pi - theta)


def zone_slack(outer: Zone, inner: Zone) -> float:
    """Containment slack ``outer.half_width - phi - inner.half_width`` where phi is the angle between normals."""
    return outer.half_width - normals_angle(outer.normal, inner.normal) - inner.half_width


def zone_contains_zone(outer: Zone, inner: Zone) -> bool:
    """Check zone containment: ``phi + inner.half_width <= outer.half_width + EPS_GEOM``.

    ``phi`` is the angle between normals reduced to [0, pi/2]. The farthest point of the inner zone from the
    outer great sphere is at angular height ``phi + inner.half_width`` (capped at pi/2), which gives the criterion.
    """
    return zone_slack(outer, inner) >= -EPS_GEOM


__all__ = [
    "spherical_distance",
    "cap_contains_point",
    "cap_contains_cap",
    "cap_slack",
    "zone_contains_point",
    "zone_contains_zone",
    "zone_slack",
    "normals_angle",
]
