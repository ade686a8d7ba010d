from typing import Iterator
from typing import Tuple

import numba
import numpy as np

from capcover.bang.signing import MAX_EXACT_SIZE
from capcover.core.exceptions import UnsupportedSizeError
from capcover.separability import SignPattern
from capcover.sphere import as_vector_array


def _check_size(n: int):
    if n > MAX_EXACT_SIZE:
        raise UnsupportedSizeError(f"Bang set enumeration supports n <= {MAX_EXACT_SIZE}, n = {n} given")


def bang_set_enumerate(vectors) -> Iterator[Tuple[SignPattern, np.ndarray]]:
    """Enumerate all 2^n signed sums ``sum eps_i w_i`` in Gray-code order, starting from all plus signs.

    Raises
    ------
    UnsupportedSizeError:
        if there are more than 24 vectors
    """
    vectors = as_vector_array(vectors)
    _check_size(vectors.shape[0])
    return _gray_sums(vectors)


def _gray_sums(vectors: np.ndarray) -> Iterator[Tuple[SignPattern, np.ndarray]]:
    n = vectors.shape[0]
    signs = np.ones(n, dtype=int)
    total = vectors.sum(axis=0)
    yield SignPattern(tuple(signs)), total.copy()
    for k in range(1, 1 << n):
        bit = (k & -k).bit_length() - 1
        total = total - 2 * signs[bit] * vectors[bit]
        signs[bit] = -signs[bit]
        yield SignPattern(tuple(signs)), total.copy()


def bang_set_array(vectors) -> np.ndarray:
    """All 2^n signed sums as an array of shape (2^n, D), rows in ``bang_set_enumerate`` order."""
    vectors = as_vector_array(vectors)
    _check_size(vectors.shape[0])
    return np.stack([total for _, total in _gray_sums(vectors)])


@numba.njit
def _max_translate_norm2(base: np.ndarray, vectors: np.ndarray) -> float:
    """Largest ``|base - y|^2`` over ``y`` in the Bang set, enumerated in Gray-code order."""
    n, size = vectors.shape
    z = base.copy()
    signs = np.ones(n)
    for i in range(n):
        for j in range(size):
            z[j] -= vectors[i, j]
    best = 0.0
    for j in range(size):
        best += z[j] * z[j]
    for k in range(1, 1 << n):
        bit = 0
        while ((k >> bit) & 1) == 0:
            bit += 1
        # y loses 2 eps w, so base - y gains it
        for j in range(size):
            z[j] += 2.0 * signs[bit] * vectors[bit, j]
        signs[bit] = -signs[bit]
        norm2 = 0.0
        for j in range(size):
            norm2 += z[j] * z[j]
        if norm2 > best:
            best = norm2
    return best


__all__ = ["bang_set_enumerate", "bang_set_array"]
