import math
from dataclasses import dataclass
from typing import Iterable
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

from capcover.core.exceptions import ValidationError
from capcover.sphere.constants import EPS_UNIT
from capcover.sphere.constants import HALF_PI

ArrayLike = Union[Sequence[float], np.ndarray]


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


def as_point(coords: ArrayLike, name: str = "point") -> np.ndarray:
    """Validate that ``coords`` is a unit vector and return it as an immutable float array.

    Parameters
    ----------
    coords:
        coordinates in R^{d+1}
    name:
        name used in error messages

    Raises
    ------
    ValidationError:
        if coords is not a 1-D vector of length >= 2 or its norm differs from 1 by more than ``EPS_UNIT``
    """
    point = np.asarray(coords, dtype=float)
    if point.ndim != 1 or point.shape[0] < 2:
        raise ValidationError(f"{name} should be a vector of length d + 1 >= 2, shape {point.shape} given")
    if not np.all(np.isfinite(point)):
        raise ValidationError(f"{name} contains non-finite coordinates")
    norm = float(np.linalg.norm(point))
    if abs(norm - 1.0) > EPS_UNIT:
        raise ValidationError(f"{name} should have unit norm, |{name}| = {norm!r}")
    return _frozen(point)


def normalize(vector: ArrayLike, name: str = "vector") -> np.ndarray:
    """Project a nonzero vector onto the unit sphere (central projection)."""
    vector = np.asarray(vector, dtype=float)
    norm = float(np.linalg.norm(vector))
    if norm == 0.0 or not math.isfinite(norm):
        raise ValidationError(f"Cannot project {name} with norm {norm!r} onto the sphere")
    return vector / norm


def canonical_normal(normal: ArrayLike) -> np.ndarray:
    """Return ``normal`` or ``-normal``, whichever has its first nonzero coordinate positive.

    Coordinates with absolute value below ``EPS_UNIT`` count as zero.
    """
    normal = np.asarray(normal, dtype=float)
    for value in normal:
        if abs(value) > EPS_UNIT:
            return normal if value > 0 else -normal
    return normal


def _check_angle(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value) or not 0.0 < value < HALF_PI:
        raise ValidationError(f"{name} should lie in (0, pi/2), {value!r} given")
    return value


@dataclass(frozen=True, eq=False)
class Cap:
    """Spherical cap: points within spherical distance ``radius`` from ``center``.

    ``is_open`` only marks the dual caps of the separability criterion; all predicates compare
    with tolerance, openness matters only through the strict feasibility margin.
    """

    center: np.ndarray
    radius: float
    is_open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center, name="cap center"))
        object.__setattr__(self, "radius", _check_angle(self.radius, "cap radius"))
        object.__setattr__(self, "is_open", bool(self.is_open))

    @property
    def dim(self) -> int:
        """Dimension d of the sphere S^d the cap lives on."""
        return self.center.shape[0] - 1

    def __eq__(self, other):
        if not isinstance(other, Cap):
            return NotImplemented
        return (
            np.array_equal(self.center, other.center)
            and self.radius == other.radius
            and self.is_open == other.is_open
        )

    __hash__ = None  # type: ignore

    def __repr__(self):
        kind = "open " if self.is_open else ""
        return f"Cap({kind}center={np.array2string(self.center, precision=6, separator=', ')}, radius={self.radius!r})"


@dataclass(frozen=True, eq=False)
class Zone:
    """Zone: points within spherical distance ``half_width`` from the great sphere orthogonal to ``normal``.

    The normal is stored in canonical form (first nonzero coordinate positive), ``normal`` and ``-normal``
    denote the same zone.
    """

    normal: np.ndarray
    half_width: float

    def __post_init__(self):
        normal = as_point(self.normal, name="zone normal")
        object.__setattr__(self, "normal", _frozen(canonical_normal(normal)))
        object.__setattr__(self, "half_width", _check_angle(self.half_width, "zone half-width"))

    @property
    def dim(self) -> int:
        """Dimension d of the sphere S^d the zone lives on."""
        return self.normal.shape[0] - 1

    @property
    def width(self) -> float:
        """Full angular width 2 * half_width."""
        return 2 * self.half_width

    def __eq__(self, other):
        if not isinstance(other, Zone):
            return NotImplemented
        return np.array_equal(self.normal, other.normal) and self.half_width == other.half_width

    __hash__ = None  # type: ignore

    def __repr__(self):
        return (
            f"Zone(normal={np.array2string(self.normal, precision=6, separator=', ')}, "
            f"half_width={self.half_width!r})"
        )


@dataclass(frozen=True, eq=False)
class PlankVector:
    """Vector ``w`` encoding the open plank ``{x : |<x, w>| < <w, w>}``; ``|w| = sin(half-width)``."""

    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 1 or w.shape[0] < 2:
            raise ValidationError(f"Plank vector should be a vector of length >= 2, shape {w.shape} given")
        norm = float(np.linalg.norm(w))
        if not 0.0 < norm < 1.0:
            raise ValidationError(f"Plank vector norm should lie in (0, 1), |w| = {norm!r} given")
        object.__setattr__(self, "w", _frozen(w))

    @property
    def norm(self) -> float:
        """Euclidean norm of w, the sine of the zone half-width."""
        return float(np.linalg.norm(self.w))

    def __eq__(self, other):
        if not isinstance(other, PlankVector):
            return NotImplemented
        return np.array_equal(self.w, other.w)

    __hash__ = None  # type: ignore


@dataclass(frozen=True, eq=False)
class Instance:
    """Finite family of caps on S^dim."""

    dim: int
    caps: Tuple[Cap, ...]

    def __post_init__(self):
        dim = int(self.dim)
        if dim < 1:
            raise ValidationError(f"Sphere dimension should be >= 1, {self.dim} given")
        caps = tuple(self.caps)
        if not caps:
            raise ValidationError("Instance should contain at least one cap")
        for idx, cap in enumerate(caps):
            if not isinstance(cap, Cap):
                raise ValidationError(f"caps[{idx}] is {type(cap).__name__}, Cap expected")
            if cap.dim != dim:
                raise ValidationError(f"caps[{idx}] lives on S^{cap.dim}, instance is on S^{dim}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "caps", caps)

    @classmethod
    def from_arrays(cls, centers: ArrayLike, radii: Iterable[float]) -> "Instance":
        """Build instance from array of centers with shape (n, d + 1) and radii."""
        centers = np.atleast_2d(np.asarray(centers, dtype=float))
        radii = np.atleast_1d(np.asarray(radii, dtype=float))
        if radii.shape != (centers.shape[0],):
            raise ValidationError(f"Expected {centers.shape[0]} radii, one per center, got shape {radii.shape}")
        caps = tuple(Cap(center=center, radius=float(radius)) for center, radius in zip(centers, radii))
        return cls(dim=centers.shape[1] - 1, caps=caps)

    @property
    def n(self) -> int:
        """Number of caps."""
        return len(self.caps)

    @property
    def centers(self) -> np.ndarray:
        """Array of cap centers, shape (n, dim + 1)."""
        return np.stack([cap.center for cap in self.caps])

    @property
    def radii(self) -> np.ndarray:
        """Array of cap radii, shape (n,)."""
        return np.array([cap.radius for cap in self.caps])

    @property
    def sum_radii(self) -> float:
        """Exactly rounded sum of radii."""
        return math.fsum(cap.radius for cap in self.caps)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return self.dim == other.dim and self.caps == other.caps

    __hash__ = None  # type: ignore


def as_vector_array(vectors) -> np.ndarray:
    """Stack plank vectors (``PlankVector`` objects or raw arrays) into a float array of shape (n, D)."""
    rows = [vector.w if isinstance(vector, PlankVector) else np.asarray(vector, dtype=float) for vector in vectors]
    if not rows:
        raise ValidationError("At least one vector required")
    array = np.stack(rows).astype(float)
    if array.ndim != 2:
        raise ValidationError(f"Vectors should be one-dimensional of equal length, got shape {array.shape}")
    return array


__all__ = [
    "Cap",
    "Zone",
    "PlankVector",
    "Instance",
    "as_point",
    "normalize",
    "canonical_normal",
    "as_vector_array",
]
