import math
from dataclasses import dataclass
from itertools import combinations
from itertools import islice
from typing import Optional
from typing import Tuple

import numpy as np

from capcover.bang.signing import MAX_EXACT_SIZE
from capcover.bang.signing import OrientedFamily
from capcover.core.exceptions import UnsupportedSizeError
from capcover.sphere import EPS_GEOM

_CHUNK = 8192


@dataclass(frozen=True)
class SubsetViolation:
    """Index set J with ``|sum_{i in J} w_i| > sin(sum_{i in J} a_i) + EPS_GEOM``."""

    indices: Tuple[int, ...]
    lhs: float
    rhs: float

    @property
    def excess(self) -> float:
        """``lhs - rhs``."""
        return self.lhs - self.rhs


def subset_violates(family: OrientedFamily, indices) -> bool:
    """Check the violation inequality for one index set."""
    indices = list(indices)
    lhs = float(np.linalg.norm(family.vectors[indices].sum(axis=0)))
    rhs = math.sin(math.fsum(family.half_widths[indices]))
    return lhs > rhs + EPS_GEOM


def find_minimal_violating_subset(family: OrientedFamily) -> Optional[SubsetViolation]:
    """Find an inclusion-minimal index set whose partial sum is too long.

    Returns ``None`` if the whole family satisfies ``|w| <= sin(sum a_i) + EPS_GEOM``. Otherwise subsets are scanned
    by ascending cardinality starting from pairs (a single vector has ``|w_i| = sin a_i`` and never violates), in
    lexicographic order within a cardinality; the first violating subset is inclusion-minimal.

    Raises
    ------
    UnsupportedSizeError:
        if the family has more than 24 vectors
    """
    n = family.n
    if n > MAX_EXACT_SIZE:
        raise UnsupportedSizeError(
            f"Minimal violating subset search supports n <= {MAX_EXACT_SIZE}, n = {n} given; "
            f"reduction is only available for families of supported size"
        )
    total = math.fsum(family.half_widths)
    if family.norm <= math.sin(total) + EPS_GEOM:
        return None

    for size in range(2, n + 1):
        subsets = combinations(range(n), size)
        while True:
            chunk = list(islice(subsets, _CHUNK))
            if not chunk:
                break
            index = np.array(chunk, dtype=int)
            lhs = np.linalg.norm(family.vectors[index].sum(axis=1), axis=1)
            rhs = np.sin(family.half_widths[index].sum(axis=1))
            hits = np.flatnonzero(lhs > rhs + EPS_GEOM)
            if hits.size:
                first = int(hits[0])
                return SubsetViolation(
                    indices=tuple(int(idx) for idx in chunk[first]), lhs=float(lhs[first]), rhs=float(rhs[first])
                )
    # the full set violates, so the scan always returns above
    return SubsetViolation(indices=tuple(range(n)), lhs=family.norm, rhs=math.sin(total))


__all__ = ["SubsetViolation", "subset_violates", "find_minimal_violating_subset"]
