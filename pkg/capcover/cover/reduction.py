import math
from dataclasses import dataclass
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from capcover.bang import MaxNormSigner
from capcover.bang import OrientedFamily
from capcover.bang import find_minimal_violating_subset
from capcover.core.exceptions import CoverFailureError
from capcover.core.exceptions import HypothesisError
from capcover.core.exceptions import InternalInvariantError
from capcover.core.exceptions import ValidationError
from capcover.cover.merge import MergeStep
from capcover.cover.merge import merge_slacks
from capcover.cover.merge import merge_zones
from capcover.loggers import covlogger
from capcover.separability import PatternFeasibilitySolver
from capcover.separability import SeparabilityStatus
from capcover.separability import check_nonseparable
from capcover.sphere import EPS_GEOM
from capcover.sphere import HALF_PI
from capcover.sphere import Instance
from capcover.sphere import Zone
from capcover.sphere import plank_vector
from capcover.sphere import zone_contains_zone
from capcover.sphere import zone_slack

TRACK_SEPARABILITY_MAX_SIZE = 12
_WIDTH_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class Reduction:
    """Outcome of ``reduce_to_small_w``: the reduced zones, the merge trace and the final oriented family."""

    zones: Tuple[Zone, ...]
    trace: Tuple[MergeStep, ...]
    family: OrientedFamily
    heuristic: bool

    @property
    def oriented_w(self) -> np.ndarray:
        """Maximal signed sum of the reduced family."""
        return self.family.w

    @property
    def initial_w_norm(self) -> float:
        """Norm of the maximal signed sum before any merge."""
        return self.trace[0].w_norm_before if self.trace else self.family.norm

    def __iter__(self):
        return iter((self.zones, self.trace, self.oriented_w))


@dataclass(frozen=True, eq=False)
class CoveringZone:
    """Outcome of ``covering_zone``.

    ``zone`` has half-width equal to the sum of the input half-widths; ``tight_half_width = arcsin|w|`` gives the
    narrower zone around the same great sphere that also covers the inputs.
    """

    zone: Zone
    trace: Tuple[MergeStep, ...]
    heuristic: bool
    family: OrientedFamily
    tight_half_width: float
    initial_w_norm: float

    def __iter__(self):
        return iter((self.zone, self.trace, self.heuristic))


def _validate_zones(zones: Sequence[Zone]) -> List[Zone]:
    zones = list(zones)
    if not zones:
        raise ValidationError("At least one zone required")
    for idx, zone in enumerate(zones):
        if not isinstance(zone, Zone):
            raise ValidationError(f"zones[{idx}] is {type(zone).__name__}, Zone expected")
        if zone.dim != zones[0].dim:
            raise ValidationError(f"zones[{idx}] lives on S^{zone.dim}, zones[0] on S^{zones[0].dim}")
    total = math.fsum(zone.half_width for zone in zones)
    if total >= HALF_PI - EPS_GEOM:
        raise HypothesisError(f"Sum of half-widths {total!r} should be below pi/2")
    return zones


def _check_family_nonseparable(
    orientations: Sequence[np.ndarray], half_widths: Sequence[float], solver: Optional[PatternFeasibilitySolver]
):
    instance = Instance.from_arrays(np.stack(orientations), half_widths)
    verdict = check_nonseparable(instance, solver=solver, n_jobs=1)
    if verdict.status is SeparabilityStatus.separable:
        raise InternalInvariantError(
            f"Merged family became separable: pattern {verdict.witness_pattern.signs}, "
            f"margin {verdict.best_margin!r}"
        )
    if verdict.status is SeparabilityStatus.indeterminate:
        covlogger.log(f"Separability of merged family is undecided, best margin {verdict.best_margin!r}")


def reduce_to_small_w(
    zones: Sequence[Zone],
    signer: Optional[MaxNormSigner] = None,
    orientations: Optional[Sequence[np.ndarray]] = None,
    track_separability: bool = False,
    solver: Optional[PatternFeasibilitySolver] = None,
) -> Reduction:
    """Merge zones until the maximal signed sum satisfies ``|w| <= sin(sum a_i) + EPS_GEOM``.

    Every round orients the current family with ``signer``, stops if the bound holds, else merges the
    inclusion-minimal violating subset into one zone placed at the smallest merged position. Merges keep the
    sum of half-widths, and each merge lowers the family size, so there are at most n - 1 rounds.

    Parameters
    ----------
    zones:
        zones with sum of half-widths below pi/2
    signer:
        maximal-norm signer, default ``MaxNormSigner()``
    orientations:
        unit vectors ``+-normal`` telling which of the two complement caps of each zone is the dual cap;
        used only by ``track_separability``
    track_separability:
        re-check after every merge that the dual cap family is still non-separable (families up to 12 zones)
    solver:
        feasibility solver for the re-check

    Returns
    -------
    :
        reduced zones, merge trace and final oriented family; unpacks as ``(zones, trace, oriented_w)``

    Raises
    ------
    HypothesisError:
        if the sum of half-widths is not below pi/2
    InternalInvariantError:
        if a merge breaks width conservation, the merge count exceeds n - 1 or the tracked family becomes separable
    """
    zones = _validate_zones(zones)
    signer = MaxNormSigner() if signer is None else signer
    n = len(zones)
    total = math.fsum(zone.half_width for zone in zones)
    half_widths = [zone.half_width for zone in zones]
    sources: List[Tuple[int, ...]] = [(idx,) for idx in range(n)]
    if orientations is None:
        orientations = [zone.normal for zone in zones]
    orientations = [np.asarray(orientation, dtype=float) for orientation in orientations]

    trace: List[MergeStep] = []
    heuristic = False
    while True:
        vectors = np.stack([plank_vector(zone).w for zone in zones])
        family = signer.sign(vectors, half_widths)
        heuristic = heuristic or family.heuristic
        if family.norm <= math.sin(total) + EPS_GEOM:
            break
        violation = find_minimal_violating_subset(family)
        if violation is None:
            break

        merged = list(violation.indices)
        members = family.vectors[merged]
        w_merged = members.sum(axis=0)
        member_half_widths = [half_widths[idx] for idx in merged]
        new_zone = merge_zones([zones[idx] for idx in merged], member_half_widths, w_merged, members)
        norm_slack, member_slacks = merge_slacks(member_half_widths, w_merged, members)
        source = tuple(sorted(src for idx in merged for src in sources[idx]))
        trace.append(
            MergeStep(
                merged_indices=tuple(merged),
                source_indices=source,
                new_zone=new_zone,
                norm_slack=norm_slack,
                member_slacks=member_slacks,
                w_norm_before=family.norm,
            )
        )

        # the merged dual cap lies on the side of the members' dual caps
        side = sum(float(new_zone.normal @ orientations[idx]) for idx in merged)
        orientation = new_zone.normal if side >= 0 else -new_zone.normal

        keep = merged[0]
        drop = set(merged[1:])
        zones = [new_zone if idx == keep else zone for idx, zone in enumerate(zones) if idx not in drop]
        half_widths = [
            new_zone.half_width if idx == keep else value for idx, value in enumerate(half_widths) if idx not in drop
        ]
        sources = [source if idx == keep else value for idx, value in enumerate(sources) if idx not in drop]
        orientations = [
            orientation if idx == keep else value for idx, value in enumerate(orientations) if idx not in drop
        ]

        if abs(math.fsum(half_widths) - total) > _WIDTH_TOLERANCE:
            raise InternalInvariantError(
                f"Merge changed the sum of half-widths from {total!r} to {math.fsum(half_widths)!r}"
            )
        if len(trace) > n - 1:
            raise InternalInvariantError(f"Reduction made {len(trace)} merges for {n} zones")
        covlogger.log(
            f"Merged zones {tuple(merged)} into half-width {new_zone.half_width:.6f}, {len(zones)} zones left"
        )
        if track_separability and len(zones) <= TRACK_SEPARABILITY_MAX_SIZE:
            _check_family_nonseparable(orientations, half_widths, solver)

    return Reduction(zones=tuple(zones), trace=tuple(trace), family=family, heuristic=heuristic)


def covering_zone(
    zones: Sequence[Zone],
    signer: Optional[MaxNormSigner] = None,
    orientations: Optional[Sequence[np.ndarray]] = None,
    verify: bool = True,
    track_separability: bool = False,
    solver: Optional[PatternFeasibilitySolver] = None,
) -> CoveringZone:
    """Build one zone of half-width ``sum a_i`` covering all zones.

    The reduction runs on the original zones; its final maximal signed sum w gives the normal ``w / |w|``.
    The zone ``{x : |<x, w/|w|>| <= |w|}`` already covers the inputs, it is recorded as ``tight_half_width``.

    Parameters
    ----------
    zones:
        zones with sum of half-widths below pi/2, non-separable in the dual sense (not re-checked)
    signer:
        maximal-norm signer
    orientations:
        dual cap sides, see ``reduce_to_small_w``
    verify:
        check containment of every input zone
    track_separability:
        re-check non-separability after each merge
    solver:
        feasibility solver for the re-check

    Raises
    ------
    CoverFailureError:
        if ``verify`` is set and an input zone is not contained
    """
    zones = _validate_zones(zones)
    reduction = reduce_to_small_w(
        zones, signer=signer, orientations=orientations, track_separability=track_separability, solver=solver
    )
    w = reduction.oriented_w
    norm = float(np.linalg.norm(w))
    if norm == 0.0:
        raise InternalInvariantError("Maximal signed sum vanished")
    total = math.fsum(zone.half_width for zone in zones)
    zone = Zone(normal=w / norm, half_width=total)

    if verify:
        for idx, original in enumerate(zones):
            if not zone_contains_zone(zone, original):
                raise CoverFailureError(
                    "Covering zone misses an input zone",
                    dump={
                        "zone": idx,
                        "slack": zone_slack(zone, original),
                        "heuristic": reduction.heuristic,
                        "w_norm": norm,
                    },
                )
    return CoveringZone(
        zone=zone,
        trace=reduction.trace,
        heuristic=reduction.heuristic,
        family=reduction.family,
        tight_half_width=math.asin(min(norm, 1.0)),
        initial_w_norm=reduction.initial_w_norm,
    )


__all__ = ["Reduction", "CoveringZone", "reduce_to_small_w", "covering_zone", "TRACK_SEPARABILITY_MAX_SIZE"]
