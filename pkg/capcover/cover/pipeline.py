from dataclasses import dataclass
from typing import Any
from typing import Dict
from typing import Optional
from typing import Tuple

import numpy as np

from capcover.bang import MaxNormSigner
from capcover.core import BaseMixin
from capcover.core.exceptions import HypothesisError
from capcover.core.exceptions import SeparableInputError
from capcover.core.exceptions import UndecidedSeparabilityError
from capcover.core.exceptions import ValidationError
from capcover.cover.merge import MergeStep
from capcover.cover.reduction import covering_zone
from capcover.loggers import covlogger
from capcover.separability import PatternFeasibilitySolver
from capcover.separability import SeparabilityStatus
from capcover.separability import SeparabilityVerdict
from capcover.separability import check_nonseparable
from capcover.sphere import EPS_GEOM
from capcover.sphere import HALF_PI
from capcover.sphere import Cap
from capcover.sphere import Instance
from capcover.sphere import cap_to_zone
from capcover.sphere import spherical_distance


class CoverOptions(BaseMixin):
    """Options of ``cover_caps``."""

    def __init__(
        self,
        skip_check: bool = False,
        signer: Optional[MaxNormSigner] = None,
        solver: Optional[PatternFeasibilitySolver] = None,
        track_separability: bool = False,
        n_jobs: Optional[int] = None,
    ):
        """Init CoverOptions.

        Parameters
        ----------
        skip_check:
            do not run the separability check; the cover is still verified and may come out invalid
        signer:
            maximal-norm signer, default ``MaxNormSigner()``
        solver:
            feasibility solver of the separability check, default ``PatternFeasibilitySolver()``
        track_separability:
            re-check non-separability after each merge (families up to 12 caps)
        n_jobs:
            joblib workers for the separability check
        """
        self.skip_check = skip_check
        self.signer = signer
        self.solver = solver
        self.track_separability = track_separability
        self.n_jobs = n_jobs


@dataclass(frozen=True, eq=False)
class CoverCertificate:
    """Record of a computed cover.

    Attributes
    ----------
    cover_cap:
        covering cap, radius equals the sum of input radii
    input_caps:
        the covered caps
    containment_slacks:
        ``radius - dist(center, c_i) - a_i`` per input cap
    merge_trace:
        merges of the reduction loop
    final_w:
        maximal signed sum of plank vectors after reduction
    heuristic_signing:
        True if some signing in the reduction was heuristic
    separability:
        verdict of the separability check
    valid:
        True iff every slack is at least ``-EPS_GEOM``
    tight_half_width:
        ``arcsin|final_w|``, radius of the tighter zone the reduction proves
    initial_w_norm:
        norm of the maximal signed sum before reduction
    """

    cover_cap: Cap
    input_caps: Tuple[Cap, ...]
    containment_slacks: np.ndarray
    merge_trace: Tuple[MergeStep, ...]
    final_w: np.ndarray
    heuristic_signing: bool
    separability: SeparabilityVerdict
    valid: bool
    tight_half_width: float
    initial_w_norm: float

    @property
    def instance(self) -> Instance:
        """Input caps as an instance."""
        return Instance(dim=self.cover_cap.dim, caps=self.input_caps)

    @property
    def min_slack(self) -> float:
        """Smallest containment slack."""
        return float(np.min(self.containment_slacks))

    @property
    def max_slack(self) -> float:
        """Largest containment slack."""
        return float(np.max(self.containment_slacks))

    def summary(self) -> Dict[str, Any]:
        """Flat summary for loggers and bench tables."""
        return {
            "valid": self.valid,
            "n": len(self.input_caps),
            "dim": self.cover_cap.dim,
            "radius": self.cover_cap.radius,
            "min_slack": self.min_slack,
            "max_slack": self.max_slack,
            "merges": len(self.merge_trace),
            "w_before": self.initial_w_norm,
            "w_after": float(np.linalg.norm(self.final_w)),
            "heuristic_signing": self.heuristic_signing,
            "separability": self.separability.status.value,
        }


def _cover_center(normal: np.ndarray, instance: Instance) -> np.ndarray:
    """Pick ``+-normal`` minimizing ``max_i dist(center, c_i) + a_i``; ties go to ``+normal``."""
    centers = instance.centers
    radii = instance.radii
    worst_plus = float(np.max(spherical_distance(normal, centers) + radii))
    worst_minus = float(np.max(spherical_distance(-normal, centers) + radii))
    return -normal if worst_minus < worst_plus else normal


def _check_separability(instance: Instance, options: CoverOptions) -> SeparabilityVerdict:
    if options.skip_check:
        return SeparabilityVerdict.unchecked()
    verdict = check_nonseparable(instance, solver=options.solver, n_jobs=options.n_jobs)
    if verdict.status is SeparabilityStatus.separable:
        raise SeparableInputError(verdict)
    if verdict.status is SeparabilityStatus.indeterminate:
        raise UndecidedSeparabilityError(verdict)
    return verdict


def cover_caps(instance: Instance, options: Optional[CoverOptions] = None) -> CoverCertificate:
    """Cover a non-separable family of caps by one cap of radius ``sum a_i``.

    Each cap is dualized to a zone, the zones are covered by one zone of half-width ``sum a_i`` and normal
    ``w / |w|``, and the cover cap is centered at the sign of ``w / |w|`` closer to the caps.

    Parameters
    ----------
    instance:
        family of caps with sum of radii below pi/2
    options:
        pipeline options, default ``CoverOptions()``

    Returns
    -------
    :
        certificate; ``valid`` is False when a cap is not contained (possible with skipped check or heuristic signing)

    Raises
    ------
    HypothesisError:
        if the sum of radii is not below pi/2
    SeparableInputError:
        if the separability check finds a separating avoiding great sphere
    UndecidedSeparabilityError:
        if the separability check is undecided

    Examples
    --------
    >>> import numpy as np
    >>> from capcover.sphere import Cap, Instance
    >>> instance = Instance(dim=2, caps=(Cap(np.array([1.0, 0.0, 0.0]), np.pi / 6),))
    >>> certificate = cover_caps(instance)
    >>> certificate.valid, certificate.cover_cap.radius == np.pi / 6
    (True, True)
    """
    if not isinstance(instance, Instance):
        raise ValidationError(f"Instance expected, {type(instance).__name__} given")
    options = CoverOptions() if options is None else options
    total = instance.sum_radii
    if total >= HALF_PI - EPS_GEOM:
        raise HypothesisError(f"Sum of radii {total!r} should be below pi/2")

    verdict = _check_separability(instance, options)
    result = covering_zone(
        [cap_to_zone(cap) for cap in instance.caps],
        signer=options.signer,
        orientations=[cap.center for cap in instance.caps],
        verify=False,
        track_separability=options.track_separability,
        solver=options.solver,
    )

    center = _cover_center(result.zone.normal, instance)
    cover_cap = Cap(center=center, radius=total)
    slacks = total - (spherical_distance(center, instance.centers) + instance.radii)
    certificate = CoverCertificate(
        cover_cap=cover_cap,
        input_caps=instance.caps,
        containment_slacks=np.atleast_1d(slacks),
        merge_trace=result.trace,
        final_w=result.family.w,
        heuristic_signing=result.heuristic,
        separability=verdict,
        valid=bool(np.all(slacks >= -EPS_GEOM)),
        tight_half_width=result.tight_half_width,
        initial_w_norm=result.initial_w_norm,
    )
    covlogger.log_certificate(certificate)
    return certificate


__all__ = ["CoverOptions", "CoverCertificate", "cover_caps"]
