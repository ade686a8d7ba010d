import math
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np
from scipy.optimize import minimize

from capcover.core.exceptions import ValidationError
from capcover.sphere import Cap
from capcover.sphere import Instance
from capcover.sphere import sample_sphere
from capcover.sphere import spherical_distance


def _enclosing_radius(center: np.ndarray, centers: np.ndarray, radii: np.ndarray) -> float:
    return float(np.max(np.atleast_1d(spherical_distance(center, centers)) + radii))


def _descend(
    start: np.ndarray, centers: np.ndarray, radii: np.ndarray, iters: int, step0: float
) -> Tuple[np.ndarray, float]:
    """Geodesic subgradient descent of ``max_i(dist(c, c_i) + a_i)``, returns the best visited point."""
    center = start / np.linalg.norm(start)
    best_center, best = center, _enclosing_radius(center, centers, radii)
    for k in range(iters):
        distances = np.atleast_1d(spherical_distance(center, centers))
        active = int(np.argmax(distances + radii))
        tangent = centers[active] - (centers[active] @ center) * center
        norm = np.linalg.norm(tangent)
        if norm < 1e-15:
            break
        step = min(step0 / math.sqrt(k + 1), distances[active])
        center = math.cos(step) * center + math.sin(step) * tangent / norm
        center /= np.linalg.norm(center)
        value = _enclosing_radius(center, centers, radii)
        if value < best:
            best_center, best = center, value
    return best_center, best


def _polish(start: np.ndarray, radius: float, centers: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """SLSQP on the epigraph form: minimize r subject to ``<c, c_i> >= cos(r - a_i)`` and ``|c| = 1``."""
    size = centers.shape[1]
    result = minimize(
        fun=lambda z: z[-1],
        x0=np.append(start, radius),
        jac=lambda z: np.append(np.zeros(size), 1.0),
        method="SLSQP",
        bounds=[(-1.0, 1.0)] * size + [(float(radii.max()), math.pi)],
        constraints=[
            {"type": "ineq", "fun": lambda z: centers @ z[:-1] - np.cos(z[-1] - radii)},
            {"type": "eq", "fun": lambda z: z[:-1] @ z[:-1] - 1.0, "jac": lambda z: np.append(2 * z[:-1], 0.0)},
        ],
        options={"maxiter": 500, "ftol": 1e-15},
    )
    center = result.x[:-1]
    norm = np.linalg.norm(center)
    return start if not np.isfinite(norm) or norm == 0 else center / norm


def minimal_enclosing_cap_estimate(
    caps: Union[Instance, Sequence[Cap]], iters: int = 2000, restarts: int = 8, seed: int = 0
) -> Tuple[np.ndarray, float]:
    """Estimate the smallest cap containing every cap of the family.

    Minimizes ``f(c) = max_i(dist(c, c_i) + a_i)`` over the sphere by geodesic subgradient descent with step
    ``step0 / sqrt(k + 1)`` from the normalized mean of centers, every center and ``restarts`` random points.
    The best point is polished with SLSQP; the returned radius is ``f`` at the returned unit center, so it is an
    upper bound of the optimum.

    Parameters
    ----------
    caps:
        instance or nonempty sequence of caps
    iters:
        descent iterations per start
    restarts:
        random starts on top of the deterministic ones
    seed:
        seed of the random starts

    Returns
    -------
    :
        center and radius of the enclosing cap

    Examples
    --------
    >>> import numpy as np
    >>> center, radius = minimal_enclosing_cap_estimate([Cap(np.array([0.0, 0.0, 1.0]), 0.4)])
    >>> round(radius, 12)
    0.4
    """
    caps = caps.caps if isinstance(caps, Instance) else tuple(caps)
    if not caps:
        raise ValidationError("At least one cap required")
    if iters < 0 or restarts < 0:
        raise ValidationError(f"iters and restarts should be non-negative, {iters} and {restarts} given")
    centers = np.stack([cap.center for cap in caps])
    radii = np.array([cap.radius for cap in caps])
    rng = np.random.default_rng(seed)

    starts = list(centers)
    mean = centers.mean(axis=0)
    if np.linalg.norm(mean) > 1e-12:
        starts.insert(0, mean)
    starts.extend(sample_sphere(centers.shape[1] - 1, restarts, rng))

    best_center, best = None, math.inf
    step0 = float(np.max(radii)) + float(np.max(np.atleast_1d(spherical_distance(centers[0], centers))))
    for start in starts:
        center, value = _descend(np.asarray(start, dtype=float), centers, radii, iters, max(step0, 1e-3))
        if value < best:
            best_center, best = center, value

    polished = _polish(best_center, best, centers, radii)
    value = _enclosing_radius(polished, centers, radii)
    if value < best:
        best_center, best = polished, value
    return best_center, best


__all__ = ["minimal_enclosing_cap_estimate"]
