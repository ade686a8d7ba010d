from dataclasses import dataclass
from enum import Enum
from itertools import islice
from typing import List
from typing import Optional

import numpy as np
from joblib import Parallel
from joblib import delayed

from capcover.core.exceptions import ValidationError
from capcover.loggers import covlogger
from capcover.separability.patterns import SignPattern
from capcover.separability.patterns import count_patterns
from capcover.separability.patterns import enumerate_patterns
from capcover.separability.patterns import overlap_components
from capcover.separability.solver import PatternFeasibilitySolver
from capcover.separability.solver import PatternProbe
from capcover.separability.solver import ProbeStatus
from capcover.settings import SETTINGS
from capcover.sphere import HALF_PI
from capcover.sphere import Cap
from capcover.sphere import Instance


class SeparabilityStatus(str, Enum):
    """Verdict of the separability check."""

    non_separable = "non-separable"
    separable = "separable"
    indeterminate = "indeterminate"
    unchecked = "unchecked"


@dataclass(frozen=True, eq=False)
class SeparabilityVerdict:
    """Outcome of ``check_nonseparable``.

    ``method`` tells how the verdict was reached: ``vacuous`` (one cap), ``overlap`` (connected intersection graph),
    ``solver`` (pattern enumeration) or ``skipped``.
    """

    status: SeparabilityStatus
    witness_normal: Optional[np.ndarray] = None
    witness_pattern: Optional[SignPattern] = None
    best_margin: float = -np.inf
    method: str = "solver"
    patterns_checked: int = 0

    @property
    def separable(self) -> bool:
        """True if an avoiding great sphere splitting the family was found."""
        return self.status is SeparabilityStatus.separable

    @classmethod
    def unchecked(cls) -> "SeparabilityVerdict":
        """Verdict recorded when the check is skipped."""
        return cls(status=SeparabilityStatus.unchecked, method="skipped")


def dual_cap(cap: Cap) -> Cap:
    """Return the concentric cap of radius ``pi/2 - radius`` with the open flag toggled.

    For a closed cap D the result is the open cap D' whose points are exactly the centers of open hemispheres
    covering D; applying the map twice gives back the original cap.
    """
    return Cap(center=cap.center, radius=HALF_PI - cap.radius, is_open=not cap.is_open)


def _first_decision(probes: List[PatternProbe]) -> Optional[PatternProbe]:
    for probe in probes:
        if probe.status is ProbeStatus.feasible:
            return probe
    return None


def check_nonseparable(
    instance: Instance,
    solver: Optional[PatternFeasibilitySolver] = None,
    n_jobs: Optional[int] = None,
    use_overlap: bool = True,
) -> SeparabilityVerdict:
    """Decide whether an avoiding great sphere splits the family into two nonempty parts.

    A non-constant pattern ``eps`` is realized by an avoiding sphere with normal n iff ``eps_i <n, c_i> > sin a_i``
    for every i, that is iff the signed dual caps ``eps_i D'_i`` share a point. Caps that intersect can never
    get different signs, so with ``use_overlap`` patterns are enumerated over the components of the
    intersection graph.

    Parameters
    ----------
    instance:
        family of caps
    solver:
        pattern feasibility solver, default ``PatternFeasibilitySolver()``
    n_jobs:
        number of joblib workers for pattern probes; ``SETTINGS.n_jobs`` if not set
    use_overlap:
        enumerate patterns over overlap components instead of single caps

    Returns
    -------
    :
        separable with witness if a feasible pattern is found; non-separable if every pattern is certified
        infeasible; indeterminate otherwise

    Raises
    ------
    UnsupportedSizeError:
        if the instance has more than 30 caps
    """
    if not isinstance(instance, Instance):
        raise ValidationError(f"Instance expected, {type(instance).__name__} given")
    solver = PatternFeasibilitySolver() if solver is None else solver
    n_jobs = SETTINGS.n_jobs if n_jobs is None else n_jobs
    n = instance.n

    if n == 1:
        return SeparabilityVerdict(status=SeparabilityStatus.non_separable, method="vacuous")

    components = overlap_components(instance.caps) if use_overlap else [[idx] for idx in range(n)]
    patterns = enumerate_patterns(n, components)
    if len(components) == 1:
        covlogger.log("Intersection graph is connected, family is non-separable")
        return SeparabilityVerdict(status=SeparabilityStatus.non_separable, method="overlap")

    total = count_patterns(len(components))
    covlogger.log(f"Checking {total} sign patterns over {len(components)} components of {n} caps")

    checked = 0
    best_margin = -np.inf
    undecided = False
    chunk_size = 1 if n_jobs == 1 else 4 * abs(n_jobs)
    while True:
        chunk = list(islice(patterns, chunk_size))
        if not chunk:
            break
        if n_jobs == 1:
            probes = [solver.probe(instance, pattern, stream=checked + idx) for idx, pattern in enumerate(chunk)]
        else:
            probes = Parallel(n_jobs=n_jobs)(
                delayed(solver.probe)(instance, pattern, checked + idx) for idx, pattern in enumerate(chunk)
            )
        for probe in probes:
            best_margin = max(best_margin, probe.margin)
            undecided = undecided or probe.status is ProbeStatus.indeterminate
        found = _first_decision(probes)
        if found is not None:
            checked += probes.index(found) + 1
            covlogger.log(f"Separating pattern {found.pattern.signs} found after {checked} probes")
            return SeparabilityVerdict(
                status=SeparabilityStatus.separable,
                witness_normal=found.witness,
                witness_pattern=found.pattern,
                best_margin=found.margin,
                method="solver",
                patterns_checked=checked,
            )
        checked += len(probes)

    status = SeparabilityStatus.indeterminate if undecided else SeparabilityStatus.non_separable
    covlogger.log(f"Separability check finished: {status.value} after {checked} probes")
    return SeparabilityVerdict(status=status, best_margin=best_margin, method="solver", patterns_checked=checked)


__all__ = ["SeparabilityStatus", "SeparabilityVerdict", "dual_cap", "check_nonseparable"]
