import math
from typing import Optional
from typing import Union

import numpy as np
from scipy.stats import special_ortho_group

from capcover.core.exceptions import ValidationError
from capcover.sphere.shapes import Cap
from capcover.sphere.shapes import Instance
from capcover.sphere.shapes import Zone

RandomState = Union[None, int, np.random.Generator]


def _rng(seed: RandomState) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_sphere(dim: int, size: int, rng: RandomState = None) -> np.ndarray:
    """Draw ``size`` uniform points of S^dim as an array of shape (size, dim + 1)."""
    rng = _rng(rng)
    points = rng.standard_normal(size=(size, dim + 1))
    norms = np.linalg.norm(points, axis=1, keepdims=True)
    # zero rows have probability zero; guard anyway to avoid nan
    norms[norms == 0.0] = 1.0
    return points / norms


def _orthogonal_directions(center: np.ndarray, size: int, rng: np.random.Generator) -> np.ndarray:
    directions = rng.standard_normal(size=(size, center.shape[0]))
    directions -= np.outer(directions @ center, center)
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return directions / norms


def _sample_polar_angles(dim: int, radius: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """Sample angles in [0, radius] with density proportional to sin^(dim - 1)."""
    if dim == 1:
        return rng.uniform(-radius, radius, size=size)
    angles = np.empty(0)
    sin_max = math.sin(radius)
    while angles.shape[0] < size:
        batch = max(64, 2 * (size - angles.shape[0]))
        candidates = rng.uniform(0.0, radius, size=batch)
        accept = rng.uniform(size=batch) <= (np.sin(candidates) / sin_max) ** (dim - 1)
        angles = np.concatenate([angles, candidates[accept]])
    return angles[:size]


def sample_cap(cap: Cap, size: int, rng: RandomState = None) -> np.ndarray:
    """Draw ``size`` area-uniform points of a cap on S^d.

    The polar angle from the center is drawn with density proportional to ``sin^(d-1)`` by rejection,
    the direction is uniform on the great sphere orthogonal to the center. On S^1 the signed angle is uniform.

    Returns
    -------
    :
        array of shape (size, d + 1)
    """
    rng = _rng(rng)
    angles = _sample_polar_angles(cap.dim, cap.radius, size, rng)
    directions = _orthogonal_directions(cap.center, size, rng)
    return np.cos(angles)[:, None] * cap.center[None, :] + np.sin(angles)[:, None] * directions


def sample_zone(zone: Zone, size: int, rng: RandomState = None) -> np.ndarray:
    """Draw ``size`` uniform points of a zone by rejection from sphere-uniform samples."""
    rng = _rng(rng)
    bound = math.sin(zone.half_width)
    accepted = []
    total = 0
    while total < size:
        batch = sample_sphere(zone.dim, max(64, 2 * (size - total)), rng)
        batch = batch[np.abs(batch @ zone.normal) <= bound]
        accepted.append(batch)
        total += batch.shape[0]
    return np.concatenate(accepted)[:size]


def point_at_distance(center: np.ndarray, angle: float, rng: RandomState = None) -> np.ndarray:
    """Point at spherical distance ``angle`` from ``center`` in a uniform random direction."""
    rng = _rng(rng)
    center = np.asarray(center, dtype=float)
    direction = _orthogonal_directions(center, 1, rng)[0]
    point = math.cos(angle) * center + math.sin(angle) * direction
    return point / np.linalg.norm(point)


def random_point_in_cap(cap: Cap, seed: RandomState = None) -> np.ndarray:
    """Draw one area-uniform point of the cap."""
    return sample_cap(cap, 1, seed)[0]


def random_rotation(dim: int, seed: Optional[int] = None) -> np.ndarray:
    """Draw a Haar-random rotation of R^{dim + 1} (orthogonal, determinant 1)."""
    if dim < 1:
        raise ValidationError(f"Sphere dimension should be >= 1, {dim} given")
    return special_ortho_group.rvs(dim + 1, random_state=seed)


def apply_rotation(rotation: np.ndarray, instance: Instance) -> Instance:
    """Rotate every cap center of the instance, radii are kept."""
    rotation = np.asarray(rotation, dtype=float)
    size = instance.dim + 1
    if rotation.shape != (size, size):
        raise ValidationError(f"Rotation of shape {rotation.shape} does not act on R^{size}")
    caps = tuple(
        Cap(center=rotation @ cap.center, radius=cap.radius, is_open=cap.is_open) for cap in instance.caps
    )
    return Instance(dim=instance.dim, caps=caps)


def fibonacci_sphere(n: int, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """Return near-uniform directions on S^2 from the Fibonacci spiral of ``n`` points, shape (n, 3).

    ``start`` and ``stop`` select a slice of the spiral without building the whole grid.
    """
    if n < 1:
        raise ValidationError(f"Fibonacci grid needs at least one point, {n} given")
    stop = n if stop is None else min(stop, n)
    golden_ratio = (1 + math.sqrt(5)) / 2
    index = np.arange(start, stop, dtype=float) + 0.5
    z = 1.0 - 2.0 * index / n
    phi = 2 * math.pi * index / golden_ratio
    rho = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)


__all__ = [
    "sample_sphere",
    "sample_cap",
    "sample_zone",
    "random_point_in_cap",
    "point_at_distance",
    "random_rotation",
    "apply_rotation",
    "fibonacci_sphere",
]
