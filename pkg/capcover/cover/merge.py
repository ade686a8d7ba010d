import math
from dataclasses import dataclass
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from capcover.core.exceptions import ConstructionError
from capcover.core.exceptions import InternalInvariantError
from capcover.core.exceptions import ValidationError
from capcover.sphere import EPS_GEOM
from capcover.sphere import HALF_PI
from capcover.sphere import Zone
from capcover.sphere import zone_contains_zone
from capcover.sphere import zone_slack


@dataclass(frozen=True, eq=False)
class MergeStep:
    """One merge of the reduction loop.

    Attributes
    ----------
    merged_indices:
        positions of the merged zones in the family current at that step
    source_indices:
        indices of the original zones covered by the new zone
    new_zone:
        the merged zone, half-width equals the sum of the merged half-widths
    norm_slack:
        ``|w_I| - sin(a_I)``
    member_slacks:
        ``sin(a_I - a_i) - |w_I - w_i|`` per merged zone
    w_norm_before:
        norm of the maximal signed sum of the family that triggered the merge
    """

    merged_indices: Tuple[int, ...]
    source_indices: Tuple[int, ...]
    new_zone: Zone
    norm_slack: float
    member_slacks: Tuple[float, ...]
    w_norm_before: float = float("nan")

    @property
    def precondition_slacks(self) -> Tuple[float, ...]:
        """All merge preconditions as slacks, nonnegative up to ``EPS_GEOM`` when they hold."""
        return (self.norm_slack,) + self.member_slacks


def merge_slacks(half_widths: Sequence[float], w_merged: np.ndarray, member_vectors: np.ndarray):
    """Slacks of ``|w_I| >= sin a_I`` and ``|w_I - w_i| <= sin(a_I - a_i)`` for every member."""
    total = math.fsum(half_widths)
    norm_slack = float(np.linalg.norm(w_merged)) - math.sin(total)
    member_slacks = tuple(
        math.sin(total - half_width) - float(np.linalg.norm(w_merged - vector))
        for half_width, vector in zip(half_widths, member_vectors)
    )
    return norm_slack, member_slacks


def _member_vectors(zones: Sequence[Zone], half_widths: Sequence[float], w_merged: np.ndarray) -> np.ndarray:
    vectors = []
    for zone, half_width in zip(zones, half_widths):
        vector = math.sin(half_width) * zone.normal
        vectors.append(vector if vector @ w_merged >= 0 else -vector)
    return np.stack(vectors)


def merge_zones(
    zones: Sequence[Zone],
    half_widths: Sequence[float],
    w_merged,
    member_vectors: Optional[np.ndarray] = None,
) -> Zone:
    """Cover several zones by one zone whose half-width is the sum of theirs.

    The merged zone has normal ``w_I / |w_I|`` and half-width ``a_I = sum a_i``. Under
    ``|w_I| >= sin a_I`` and ``|w_I - w_i| <= sin(a_I - a_i)`` the law of cosines with
    ``sin^2 A + sin^2 a - sin^2(A - a) = 2 sin A sin a cos(A - a)`` bounds the angle between ``w_I`` and ``w_i``
    by ``a_I - a_i``, which is exactly zone containment; containment is still checked explicitly.

    Parameters
    ----------
    zones:
        zones to merge, at least two
    half_widths:
        their half-widths
    w_merged:
        sum ``w_I`` of the oriented plank vectors of the zones
    member_vectors:
        the oriented plank vectors; if not set, each zone vector is signed to point along ``w_I``

    Raises
    ------
    InternalInvariantError:
        if the merge preconditions fail
    ConstructionError:
        if the merged zone misses one of the zones
    """
    if len(zones) < 2:
        raise ValidationError(f"Merge needs at least two zones, {len(zones)} given")
    if len(half_widths) != len(zones):
        raise ValidationError(f"Got {len(half_widths)} half-widths for {len(zones)} zones")
    w_merged = np.asarray(w_merged, dtype=float)
    if member_vectors is None:
        member_vectors = _member_vectors(zones, half_widths, w_merged)
    total = math.fsum(half_widths)
    if total >= HALF_PI:
        raise InternalInvariantError(f"Merged half-width {total!r} reaches pi/2")

    norm_slack, member_slacks = merge_slacks(half_widths, w_merged, member_vectors)
    if norm_slack < -EPS_GEOM or min(member_slacks) < -EPS_GEOM:
        raise InternalInvariantError(
            f"Merge preconditions fail: |w_I| - sin(a_I) = {norm_slack!r}, "
            f"sin(a_I - a_i) - |w_I - w_i| = {list(member_slacks)!r}"
        )

    merged = Zone(normal=w_merged / np.linalg.norm(w_merged), half_width=total)
    for idx, zone in enumerate(zones):
        if not zone_contains_zone(merged, zone):
            raise ConstructionError(
                "Merged zone does not contain a member zone",
                dump={
                    "member": idx,
                    "slack": zone_slack(merged, zone),
                    "merged_normal": merged.normal.tolist(),
                    "merged_half_width": total,
                    "member_normal": zone.normal.tolist(),
                    "member_half_width": zone.half_width,
                },
            )
    return merged


__all__ = ["MergeStep", "merge_slacks", "merge_zones"]
