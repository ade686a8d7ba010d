import math
from typing import Optional

import numpy as np

from capcover.core.exceptions import ValidationError
from capcover.loggers import covlogger
from capcover.oracle.reports import OracleReport
from capcover.separability import PatternFeasibilitySolver
from capcover.separability import SeparabilityStatus
from capcover.separability import check_nonseparable
from capcover.sphere import EPS_FEAS
from capcover.sphere import HALF_PI
from capcover.sphere import Instance
from capcover.sphere import fibonacci_sphere
from capcover.sphere import sample_sphere

GRID_CHUNK_SIZE = 1 << 18
MAX_GRID_RESOLUTION = 10 ** 7
AGREEMENT_MARGIN_BAND = 1e-4


def grid_separability(instance: Instance, resolution: int = 10 ** 6, max_witnesses: int = 10) -> OracleReport:
    """Scan a Fibonacci grid of normals for an avoiding great circle splitting a family of caps on S^2.

    A normal n is flagged when ``|<n, c_i>| > sin a_i + EPS_FEAS`` for every cap and the signs of ``<n, c_i>`` are
    not all equal.

    Parameters
    ----------
    instance:
        family of caps on S^2
    resolution:
        number of grid directions, at most 10^7
    max_witnesses:
        largest number of reported normals

    Returns
    -------
    :
        pass if no flagged normal exists (supports non-separability), fail with flagged normals otherwise;
        ``max_violation`` is the best ``min_i(|<n, c_i>| - sin a_i)`` over normals with a non-constant sign
        pattern, ``-inf`` if there is none

    Raises
    ------
    ValidationError:
        if the instance does not live on S^2 or the resolution is out of range
    """
    if instance.dim != 2:
        raise ValidationError(f"Grid separability oracle works on S^2 only, instance is on S^{instance.dim}")
    if not 1 <= resolution <= MAX_GRID_RESOLUTION:
        raise ValidationError(f"resolution should lie in [1, {MAX_GRID_RESOLUTION}], {resolution} given")

    centers = instance.centers
    sines = np.sin(instance.radii)
    best = -math.inf
    witnesses = []
    for start in range(0, resolution, GRID_CHUNK_SIZE):
        normals = fibonacci_sphere(resolution, start=start, stop=start + GRID_CHUNK_SIZE)
        dots = normals @ centers.T
        margins = np.min(np.abs(dots) - sines, axis=1)
        signs = dots > 0
        split = np.any(signs != signs[:, :1], axis=1)
        if np.any(split):
            best = max(best, float(margins[split].max()))
        flagged = np.flatnonzero(split & (margins > EPS_FEAS))
        for idx in flagged[: max(0, max_witnesses - len(witnesses))]:
            witnesses.append(normals[idx])
    covlogger.log(f"Grid scan of {resolution} normals found {len(witnesses)} separating normals")
    return OracleReport.from_witnesses(checked=resolution, witnesses=witnesses, max_violation=best)


def _random_instance(max_caps: int, rng: np.random.Generator) -> Instance:
    n = int(rng.integers(2, max_caps + 1))
    radii = rng.uniform(0.02, 0.5, size=n)
    limit = HALF_PI - 0.01
    if radii.sum() >= limit:
        radii *= rng.uniform(0.3, 1.0) * limit / radii.sum()
    return Instance.from_arrays(sample_sphere(2, n, rng), radii)


def separability_agreement(
    n_instances: int = 500,
    resolution: int = 10 ** 6,
    seed: int = 0,
    margin_band: float = AGREEMENT_MARGIN_BAND,
    max_caps: int = 6,
    solver: Optional[PatternFeasibilitySolver] = None,
) -> OracleReport:
    """Cross-check ``check_nonseparable`` against ``grid_separability`` on random families on S^2.

    A solver verdict is confident when it is separable or non-separable and its margin exceeds ``margin_band``
    in absolute value (overlap verdicts are always confident). Confident verdicts contradicting the grid are
    witnesses; indeterminate or low-margin verdicts are counted in ``details["unconfident"]``.
    """
    if n_instances < 1:
        raise ValidationError(f"n_instances should be positive, {n_instances} given")
    solver = PatternFeasibilitySolver(seed=seed) if solver is None else solver
    witnesses = []
    unconfident = 0
    max_violation = 0.0
    for idx in range(n_instances):
        instance = _random_instance(max_caps, np.random.default_rng([seed, idx]))
        verdict = check_nonseparable(instance, solver=solver, n_jobs=1)
        confident = verdict.status in (SeparabilityStatus.separable, SeparabilityStatus.non_separable) and (
            verdict.method != "solver" or abs(verdict.best_margin) > margin_band
        )
        if not confident:
            unconfident += 1
            continue
        grid = grid_separability(instance, resolution, max_witnesses=1)
        if grid.passed == verdict.separable:
            witnesses.append(
                {
                    "instance": idx,
                    "solver": verdict.status.value,
                    "solver_margin": verdict.best_margin,
                    "grid": grid.verdict.value,
                    "grid_margin": grid.max_violation,
                }
            )
            max_violation = max(max_violation, abs(verdict.best_margin) if math.isfinite(verdict.best_margin) else 0.0)
    covlogger.log(f"Separability agreement: {len(witnesses)} contradictions, {unconfident} unconfident verdicts")
    return OracleReport.from_witnesses(
        checked=n_instances - unconfident, witnesses=witnesses, max_violation=max_violation, unconfident=unconfident
    )


__all__ = ["grid_separability", "separability_agreement", "AGREEMENT_MARGIN_BAND"]
