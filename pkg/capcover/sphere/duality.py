import math
from typing import Tuple

import numpy as np

from capcover.core.exceptions import ValidationError
from capcover.sphere.constants import HALF_PI
from capcover.sphere.shapes import ArrayLike
from capcover.sphere.shapes import Cap
from capcover.sphere.shapes import PlankVector
from capcover.sphere.shapes import Zone


def cap_to_zone(cap: Cap) -> Zone:
    """Map cap to the zone of points whose open hemisphere does not avoid it.

    The zone has the cap center as normal and the cap radius as half-width; as a point set it equals
    ``S \\ (D' u -D')`` where ``D'`` is the open dual cap of radius ``pi/2 - radius``.
    """
    return Zone(normal=cap.center, half_width=cap.radius)


def zone_to_antipodal_caps(zone: Zone) -> Tuple[Cap, Cap]:
    """Return the two open caps centered at ``+-normal`` forming the complement of the zone."""
    radius = HALF_PI - zone.half_width
    return (
        Cap(center=zone.normal, radius=radius, is_open=True),
        Cap(center=-zone.normal, radius=radius, is_open=True),
    )


def plank_vector(zone: Zone) -> PlankVector:
    """Return ``w = sin(half_width) * normal``, the vector of the open plank ``{x : |<x, w>| < <w, w>}``."""
    return PlankVector(w=math.sin(zone.half_width) * zone.normal)


def zone_of_plank_vector(w: ArrayLike) -> Zone:
    """Reconstruct the zone with normal ``w / |w|`` and half-width ``arcsin|w|``.

    Raises
    ------
    ValidationError:
        if ``w = 0`` or ``|w| >= 1`` (half-width would reach pi/2)
    """
    if isinstance(w, PlankVector):
        w = w.w
    w = np.asarray(w, dtype=float)
    norm = float(np.linalg.norm(w))
    if norm == 0.0:
        raise ValidationError("Zero plank vector has no zone")
    if norm >= 1.0:
        raise ValidationError(f"Plank vector with |w| = {norm!r} >= 1 gives a zone of half-width >= pi/2")
    return Zone(normal=w / norm, half_width=math.asin(norm))


__all__ = ["cap_to_zone", "zone_to_antipodal_caps", "plank_vector", "zone_of_plank_vector"]
