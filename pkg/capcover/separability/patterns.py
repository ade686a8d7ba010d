from dataclasses import dataclass
from itertools import combinations
from typing import Iterator
from typing import List
from typing import Sequence
from typing import Tuple

import numpy as np

from capcover.core.exceptions import UnsupportedSizeError
from capcover.core.exceptions import ValidationError
from capcover.sphere import EPS_GEOM
from capcover.sphere import EPS_UNIT
from capcover.sphere import Cap
from capcover.sphere import spherical_distance

MAX_PATTERN_CAPS = 30


@dataclass(frozen=True)
class SignPattern:
    """Sign choice ``(eps_1, ..., eps_n)`` with ``eps_i`` in {+1, -1}."""

    signs: Tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(sign) for sign in self.signs)
        if not signs:
            raise ValidationError("Sign pattern should not be empty")
        if any(sign not in (-1, 1) for sign in signs):
            raise ValidationError(f"Sign pattern should contain only +1 and -1, {signs} given")
        object.__setattr__(self, "signs", signs)

    def __len__(self) -> int:
        return len(self.signs)

    def as_array(self) -> np.ndarray:
        """Signs as float array."""
        return np.array(self.signs, dtype=float)

    def negated(self) -> "SignPattern":
        """Pattern with every sign flipped."""
        return SignPattern(tuple(-sign for sign in self.signs))

    def canonical(self) -> "SignPattern":
        """Pattern or its negation, whichever has ``eps_1 = +1``."""
        return self if self.signs[0] == 1 else self.negated()

    @property
    def is_constant(self) -> bool:
        """True if all signs are equal."""
        return len(set(self.signs)) == 1

    @property
    def minus_count(self) -> int:
        """Hamming weight of the -1 entries."""
        return sum(1 for sign in self.signs if sign < 0)

    @classmethod
    def all_plus(cls, n: int) -> "SignPattern":
        """Pattern of ``n`` plus signs."""
        return cls((1,) * n)


def caps_intersect(first: Cap, second: Cap, tol: float = EPS_GEOM) -> bool:
    """Closed caps intersect iff center distance does not exceed the sum of radii (up to ``tol``)."""
    return spherical_distance(first.center, second.center) <= first.radius + second.radius + tol


def overlap_components(caps: Sequence[Cap]) -> List[List[int]]:
    """Split cap indices into connected components of the intersection graph.

    Edges use ``caps_intersect`` with tolerance ``EPS_UNIT``: pairs further apart than that are left to the
    feasibility solver. Components are ordered by their smallest index, indices inside a component ascend.
    """
    parent = list(range(len(caps)))

    def find(idx: int) -> int:
        while parent[idx] != idx:
            parent[idx] = parent[parent[idx]]
            idx = parent[idx]
        return idx

    for i, j in combinations(range(len(caps)), 2):
        if caps_intersect(caps[i], caps[j], tol=EPS_UNIT):
            root_i, root_j = find(i), find(j)
            if root_i != root_j:
                parent[max(root_i, root_j)] = min(root_i, root_j)

    groups: dict = {}
    for idx in range(len(caps)):
        groups.setdefault(find(idx), []).append(idx)
    return [groups[root] for root in sorted(groups)]


def enumerate_patterns(n: int, components: Sequence[Sequence[int]] = None) -> Iterator[SignPattern]:
    """Enumerate non-constant sign patterns with ``eps_1 = +1``.

    With ``components`` given, all caps of a component share a sign, so the enumeration runs over
    component signs. Patterns come by increasing number of -1 entries, equal counts in lexicographic
    order of the flipped positions.

    Raises
    ------
    UnsupportedSizeError:
        if ``n`` exceeds 30
    """
    if n > MAX_PATTERN_CAPS:
        raise UnsupportedSizeError(
            f"Separability check enumerates 2^(n-1) - 1 sign patterns and supports n <= {MAX_PATTERN_CAPS}, "
            f"n = {n} given"
        )
    if components is None:
        components = [[idx] for idx in range(n)]
    return _component_patterns(n, components)


def _component_patterns(n: int, components: Sequence[Sequence[int]]) -> Iterator[SignPattern]:
    membership = np.empty(n, dtype=int)
    for comp_idx, component in enumerate(components):
        membership[list(component)] = comp_idx

    free = range(1, len(components))
    for weight in range(1, len(components)):
        for flipped in combinations(free, weight):
            component_signs = np.ones(len(components), dtype=int)
            component_signs[list(flipped)] = -1
            yield SignPattern(tuple(int(sign) for sign in component_signs[membership]))


def count_patterns(n_components: int) -> int:
    """Number of patterns ``enumerate_patterns`` yields for the given number of components."""
    return 2 ** (n_components - 1) - 1


__all__ = [
    "SignPattern",
    "MAX_PATTERN_CAPS",
    "caps_intersect",
    "overlap_components",
    "enumerate_patterns",
    "count_patterns",
]
