import math
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

from capcover.core.exceptions import HypothesisError
from capcover.core.exceptions import ValidationError
from capcover.sphere import HALF_PI
from capcover.sphere import Cap
from capcover.sphere import Instance
from capcover.sphere import point_at_distance
from capcover.sphere import sample_sphere

CHAIN_RADIUS_MARGIN = 1e-3
TREE_RADIUS_MARGIN = 1e-2

Radii = Union[float, Sequence[float]]


def _validate_dim(dim: int) -> int:
    if int(dim) < 1:
        raise ValidationError(f"Sphere dimension should be >= 1, {dim} given")
    return int(dim)


def _validate_radii(radii: Radii, n: int) -> np.ndarray:
    if n < 1:
        raise ValidationError(f"Number of caps should be positive, {n} given")
    radii = np.full(n, float(radii)) if np.isscalar(radii) else np.asarray(radii, dtype=float)
    if radii.shape != (n,):
        raise ValidationError(f"Expected {n} radii, got shape {radii.shape}")
    if np.any(radii <= 0) or np.any(~np.isfinite(radii)):
        raise ValidationError(f"Radii should be positive, {radii.tolist()} given")
    total = math.fsum(radii)
    if total >= HALF_PI - CHAIN_RADIUS_MARGIN:
        raise HypothesisError(f"Sum of radii {total!r} should be below pi/2 - {CHAIN_RADIUS_MARGIN}")
    return radii


def _great_circle(dim: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Random orthonormal pair spanning a great circle of S^dim."""
    basis, _ = np.linalg.qr(rng.standard_normal(size=(dim + 1, 2)))
    return basis[:, 0], basis[:, 1]


def gen_chain(
    dim: int,
    n: int,
    radii: Radii,
    overlap_factor: float = 0.0,
    seed: Optional[int] = 0,
    geodesic: Optional[Tuple[np.ndarray, np.ndarray]] = None,
) -> Instance:
    """Place caps along a great circle, consecutive caps touching or overlapping.

    Consecutive centers are ``(a_i + a_{i+1}) * (1 - overlap_factor)`` apart, so consecutive caps intersect and
    the family is non-separable. Factor 0 gives a tangent chain, the configuration where the covering radius
    ``sum a_i`` is attained.

    Parameters
    ----------
    dim:
        sphere dimension d >= 1
    n:
        number of caps
    radii:
        common radius or one radius per cap; the sum should be below ``pi/2 - 1e-3``
    overlap_factor:
        value in [0, 1], 0 is tangent, 1 makes all centers coincide
    seed:
        seed of the random great circle
    geodesic:
        orthonormal pair ``(u, v)``; the chain starts at u and runs towards v. Random if not set

    Raises
    ------
    HypothesisError:
        if the radii sum is too large or ``overlap_factor`` is outside [0, 1]

    Examples
    --------
    >>> import numpy as np
    >>> chain = gen_chain(2, 3, np.pi / 12, geodesic=(np.array([1.0, 0, 0]), np.array([0, 1.0, 0])))
    >>> chain.n, round(chain.sum_radii / np.pi, 12)
    (3, 0.25)
    """
    dim = _validate_dim(dim)
    radii = _validate_radii(radii, int(n))
    if not 0.0 <= overlap_factor <= 1.0:
        raise HypothesisError(f"overlap_factor should lie in [0, 1], {overlap_factor!r} given")

    if geodesic is None:
        u, v = _great_circle(dim, np.random.default_rng(seed))
    else:
        u, v = (np.asarray(vector, dtype=float) for vector in geodesic)
        if u.shape != (dim + 1,) or v.shape != (dim + 1,):
            raise ValidationError(f"Geodesic vectors should have length {dim + 1}")
        if abs(u @ v) > 1e-12 or abs(np.linalg.norm(u) - 1) > 1e-12 or abs(np.linalg.norm(v) - 1) > 1e-12:
            raise ValidationError("Geodesic vectors should be orthonormal")

    gaps = (radii[:-1] + radii[1:]) * (1.0 - overlap_factor)
    angles = np.concatenate([[0.0], np.cumsum(gaps)])
    caps = tuple(
        Cap(center=math.cos(angle) * u + math.sin(angle) * v, radius=radius) for angle, radius in zip(angles, radii)
    )
    return Instance(dim=dim, caps=caps)


def gen_separable(dim: int, seed: Optional[int] = 0) -> Instance:
    """Two small caps near antipodal points; the great sphere orthogonal to the first center separates them."""
    dim = _validate_dim(dim)
    rng = np.random.default_rng(seed)
    first = sample_sphere(dim, 1, rng)[0]
    second = point_at_distance(-first, rng.uniform(0.0, 0.2), rng)
    radii = rng.uniform(math.pi / 48, math.pi / 12, size=2)
    return Instance.from_arrays(np.stack([first, second]), radii)


def gen_random_tree(dim: int, n: int, seed: Optional[int] = 0, total_radius: Optional[float] = None) -> Instance:
    """Grow a random tree of intersecting caps.

    Every new cap picks a random earlier cap as parent and is placed at a random direction from it, at distance
    below the sum of their radii, so the intersection graph is connected and the family is non-separable.
    Radii are drawn at random and rescaled to sum to ``total_radius``.

    Parameters
    ----------
    dim:
        sphere dimension
    n:
        number of caps
    seed:
        random seed
    total_radius:
        sum of radii, below ``pi/2 - 1e-2``; drawn uniformly from ``[0.1, pi/2 - 1e-2]`` if not set

    Raises
    ------
    HypothesisError:
        if ``total_radius`` is not below ``pi/2 - 1e-2``
    """
    dim = _validate_dim(dim)
    if int(n) < 1:
        raise ValidationError(f"Number of caps should be positive, {n} given")
    n = int(n)
    rng = np.random.default_rng(seed)
    upper = HALF_PI - TREE_RADIUS_MARGIN
    if total_radius is None:
        total_radius = rng.uniform(0.1, upper)
    if not 0.0 < total_radius < upper:
        raise HypothesisError(f"total_radius should lie in (0, pi/2 - {TREE_RADIUS_MARGIN}), {total_radius!r} given")

    weights = rng.uniform(0.2, 1.0, size=n)
    radii = weights / weights.sum() * total_radius
    centers = [sample_sphere(dim, 1, rng)[0]]
    for idx in range(1, n):
        parent = int(rng.integers(idx))
        distance = (radii[idx] + radii[parent]) * rng.uniform(0.05, 0.95)
        centers.append(point_at_distance(centers[parent], distance, rng))
    return Instance.from_arrays(np.stack(centers), radii)


__all__ = ["gen_chain", "gen_separable", "gen_random_tree"]
