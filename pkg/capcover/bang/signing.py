import math
from dataclasses import dataclass
from typing import Optional
from typing import Sequence
from typing import Tuple

import numba
import numpy as np

from capcover.core import BaseMixin
from capcover.core.exceptions import InternalInvariantError
from capcover.core.exceptions import UnsupportedSizeError
from capcover.core.exceptions import ValidationError
from capcover.separability import SignPattern
from capcover.settings import MAX_EXACT_SIZE
from capcover.settings import SETTINGS
from capcover.sphere import EPS_GEOM
from capcover.sphere import as_vector_array

_RESYNC_PERIOD = 4096
_TIE_TOLERANCE = 1e-12


@numba.njit
def _trailing_zeros(k: int) -> int:
    bit = 0
    while ((k >> bit) & 1) == 0:
        bit += 1
    return bit


@numba.njit
def _signed_sum(vectors: np.ndarray, mask: int) -> np.ndarray:
    n, size = vectors.shape
    w = vectors[0].copy()
    for i in range(1, n):
        sign = -1.0 if (mask >> (i - 1)) & 1 else 1.0
        for j in range(size):
            w[j] += sign * vectors[i, j]
    return w


@numba.njit
def _gray_max_norm(vectors: np.ndarray):
    """Maximize ``|sum eps_i v_i|`` over signs with ``eps_1 = +1`` in Gray-code order.

    Bit ``b`` of the mask set means ``eps_{b+1} = -1``. Step k flips the bit given by the trailing zeros of k,
    one vector update per step; the running sum is recomputed every ``_RESYNC_PERIOD`` steps.
    Among norms equal within the tie tolerance the lexicographically smallest sign vector (-1 before +1) wins.
    """
    n, size = vectors.shape
    free = n - 1
    w = _signed_sum(vectors, 0)
    mask = 0
    best_mask = 0
    best = 0.0
    for j in range(size):
        best += w[j] * w[j]
    for k in range(1, 1 << free):
        bit = _trailing_zeros(k)
        sign = -1.0 if (mask >> bit) & 1 else 1.0
        for j in range(size):
            w[j] -= 2.0 * sign * vectors[bit + 1, j]
        mask ^= 1 << bit
        if k % _RESYNC_PERIOD == 0:
            w = _signed_sum(vectors, mask)
        norm2 = 0.0
        for j in range(size):
            norm2 += w[j] * w[j]
        tolerance = _TIE_TOLERANCE * max(1.0, best)
        if norm2 > best + tolerance:
            best = norm2
            best_mask = mask
        elif norm2 >= best - tolerance:
            diff = mask ^ best_mask
            low = diff & -diff
            if mask & low:
                best = max(best, norm2)
                best_mask = mask
    return best_mask, best


@numba.njit
def _local_search(vectors: np.ndarray, signs: np.ndarray, max_flips: int):
    """Flip signs while a flip strictly increases ``|w|^2``, i.e. while ``<w - eps_i v_i, eps_i v_i> < 0``."""
    n, size = vectors.shape
    w = np.zeros(size)
    for i in range(n):
        for j in range(size):
            w[j] += signs[i] * vectors[i, j]
    flips = 0
    improved = True
    while improved and flips < max_flips:
        improved = False
        for i in range(n):
            gain = 0.0
            norm2 = 0.0
            for j in range(size):
                gain += w[j] * signs[i] * vectors[i, j]
                norm2 += vectors[i, j] * vectors[i, j]
            # <w - eps v, eps v> = <w, eps v> - |v|^2
            if gain - norm2 < -1e-15:
                for j in range(size):
                    w[j] -= 2.0 * signs[i] * vectors[i, j]
                signs[i] = -signs[i]
                flips += 1
                improved = True
    return signs


def _greedy_signs(vectors: np.ndarray) -> np.ndarray:
    order = np.argsort(-np.linalg.norm(vectors, axis=1), kind="stable")
    signs = np.ones(vectors.shape[0])
    w = np.zeros(vectors.shape[1])
    for idx in order:
        signs[idx] = 1.0 if w @ vectors[idx] >= 0 else -1.0
        w += signs[idx] * vectors[idx]
    return signs


def _canonical_signs(signs: np.ndarray) -> Tuple[int, ...]:
    if signs[0] < 0:
        signs = -signs
    return tuple(int(sign) for sign in signs)


@dataclass(frozen=True, eq=False)
class OrientedFamily:
    """Plank vectors re-signed so that their plain sum is the chosen maximal element of the Bang set.

    Attributes
    ----------
    vectors:
        re-signed vectors ``eps_i w_i``, shape (n, D)
    half_widths:
        zone half-widths ``a_i`` with ``|w_i| = sin a_i``
    signs_applied:
        the signs ``eps_i`` applied to the input vectors
    heuristic:
        True if signs come from local search rather than exhaustive enumeration
    """

    vectors: np.ndarray
    half_widths: np.ndarray
    signs_applied: SignPattern
    heuristic: bool = False

    @property
    def n(self) -> int:
        """Number of vectors."""
        return self.vectors.shape[0]

    @property
    def w(self) -> np.ndarray:
        """Sum of the re-signed vectors."""
        return self.vectors.sum(axis=0)

    @property
    def norm(self) -> float:
        """Norm of ``w``."""
        return float(np.linalg.norm(self.w))


class MaxNormSigner(BaseMixin):
    """Choose signs maximizing ``|sum eps_i w_i|`` over the Bang set.

    Families up to ``exact_threshold`` vectors are enumerated exhaustively (2^(n-1) sign vectors, Gray-code
    order); larger families use local search from a greedy start and random starts, and the result is flagged
    heuristic.
    """

    def __init__(
        self, exact_threshold: Optional[int] = None, restarts: Optional[int] = None, seed: Optional[int] = None
    ):
        """Init MaxNormSigner.

        Parameters
        ----------
        exact_threshold:
            largest family size signed exactly, at most 24; ``SETTINGS.exact_threshold`` if not set
        restarts:
            random starts of the local search; ``SETTINGS.signing_restarts`` if not set
        seed:
            seed of the random starts; ``SETTINGS.seed`` if not set
        """
        self.exact_threshold = exact_threshold
        self.restarts = restarts
        self.seed = seed
        self._exact_threshold = SETTINGS.exact_threshold if exact_threshold is None else int(exact_threshold)
        self._restarts = SETTINGS.signing_restarts if restarts is None else int(restarts)
        self._seed = SETTINGS.seed if seed is None else int(seed)
        if not 0 <= self._exact_threshold <= MAX_EXACT_SIZE:
            raise ValidationError(
                f"exact_threshold should lie in [0, {MAX_EXACT_SIZE}], {self._exact_threshold} given"
            )
        if self._restarts < 0:
            raise ValidationError(f"restarts should be non-negative, {self._restarts} given")

    def exact_signs(self, vectors: np.ndarray) -> Tuple[int, ...]:
        """Globally maximal signs with ``eps_1 = +1``, ties broken lexicographically."""
        if vectors.shape[0] > MAX_EXACT_SIZE:
            raise UnsupportedSizeError(f"Exact signing supports n <= {MAX_EXACT_SIZE}, n = {vectors.shape[0]} given")
        best_mask, _ = _gray_max_norm(np.ascontiguousarray(vectors))
        return (1,) + tuple(-1 if (best_mask >> bit) & 1 else 1 for bit in range(vectors.shape[0] - 1))

    def heuristic_signs(self, vectors: np.ndarray) -> Tuple[int, ...]:
        """Locally maximal signs: the best of local searches from a greedy start and random starts."""
        vectors = np.ascontiguousarray(vectors)
        n = vectors.shape[0]
        rng = np.random.default_rng(self._seed)
        starts = [_greedy_signs(vectors)] + [rng.choice([-1.0, 1.0], size=n) for _ in range(self._restarts)]
        best_signs: Optional[Tuple[int, ...]] = None
        best_norm2 = -1.0
        for start in starts:
            signs = _canonical_signs(_local_search(vectors, start.copy(), 1000 * n))
            norm2 = float(np.sum((np.array(signs)[:, None] * vectors).sum(axis=0) ** 2))
            tolerance = _TIE_TOLERANCE * max(1.0, best_norm2)
            if norm2 > best_norm2 + tolerance or (abs(norm2 - best_norm2) <= tolerance and signs < best_signs):
                best_signs, best_norm2 = signs, norm2
        return best_signs

    def sign(self, vectors, half_widths: Optional[Sequence[float]] = None) -> OrientedFamily:
        """Orient the family; see ``max_norm_signing``."""
        vectors = as_vector_array(vectors)
        norms = np.linalg.norm(vectors, axis=1)
        if half_widths is None:
            if np.any(norms >= 1.0) or np.any(norms == 0.0):
                raise ValidationError("Plank vector norms should lie in (0, 1) to infer half-widths")
            half_widths = np.arcsin(norms)
        half_widths = np.asarray(half_widths, dtype=float)
        if half_widths.shape != (vectors.shape[0],):
            raise ValidationError(f"Expected {vectors.shape[0]} half-widths, got shape {half_widths.shape}")

        heuristic = vectors.shape[0] > self._exact_threshold
        signs = self.heuristic_signs(vectors) if heuristic else self.exact_signs(vectors)
        oriented = np.array(signs, dtype=float)[:, None] * vectors
        family = OrientedFamily(
            vectors=oriented, half_widths=half_widths, signs_applied=SignPattern(signs), heuristic=heuristic
        )
        if family.norm < norms.max() - EPS_GEOM:
            raise InternalInvariantError(
                f"Maximal signed sum has norm {family.norm!r} below the largest vector norm {norms.max()!r}"
            )
        return family


def max_norm_signing(
    vectors, config: Optional[MaxNormSigner] = None, half_widths: Optional[Sequence[float]] = None
) -> OrientedFamily:
    """Re-sign plank vectors so that ``w = sum w_i`` has maximal norm in the Bang set.

    Parameters
    ----------
    vectors:
        ``PlankVector`` objects or arrays, nonempty
    config:
        signer configuration, default ``MaxNormSigner()``
    half_widths:
        zone half-widths; ``arcsin|w_i|`` if not set

    Returns
    -------
    :
        oriented family; ``heuristic`` is set when the family exceeds ``config.exact_threshold``

    Examples
    --------
    >>> import numpy as np
    >>> family = max_norm_signing([np.array([0.5, 0.0, 0.0]), np.array([-0.3, 0.0, 0.0])])
    >>> family.signs_applied.signs
    (1, -1)
    >>> round(family.norm, 12)
    0.8
    """
    config = MaxNormSigner() if config is None else config
    return config.sign(vectors, half_widths)


def exact_max_norm(vectors) -> float:
    """Largest norm in the Bang set, by exhaustive enumeration."""
    vectors = as_vector_array(vectors)
    if vectors.shape[0] > MAX_EXACT_SIZE:
        raise UnsupportedSizeError(f"Exact signing supports n <= {MAX_EXACT_SIZE}, n = {vectors.shape[0]} given")
    _, best = _gray_max_norm(np.ascontiguousarray(vectors))
    return math.sqrt(best)


__all__ = ["MAX_EXACT_SIZE", "OrientedFamily", "MaxNormSigner", "max_norm_signing", "exact_max_norm"]
