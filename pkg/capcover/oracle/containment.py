import math
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np
from joblib import Parallel
from joblib import delayed

from capcover.core.exceptions import ValidationError
from capcover.loggers import covlogger
from capcover.oracle.reports import OracleReport
from capcover.sphere import EPS_GEOM
from capcover.sphere import HALF_PI
from capcover.sphere import Cap
from capcover.sphere import Zone
from capcover.sphere import cap_contains_cap
from capcover.sphere import cap_slack
from capcover.sphere import point_at_distance
from capcover.sphere import sample_cap
from capcover.sphere import sample_sphere
from capcover.sphere import sample_zone
from capcover.sphere import spherical_distance
from capcover.sphere import zone_contains_zone
from capcover.sphere import zone_slack

Region = Union[Cap, Zone]

SAMPLE_BATCH_SIZE = 100_000
ZONE_CRITERION_BAND = 1e-6


def _dim(region: Region) -> int:
    if not isinstance(region, (Cap, Zone)):
        raise ValidationError(f"Cap or Zone expected, {type(region).__name__} given")
    return region.dim


def _sample(region: Region, size: int, rng: np.random.Generator) -> np.ndarray:
    if isinstance(region, Cap):
        return sample_cap(region, size, rng)
    return sample_zone(region, size, rng)


def distance_outside(region: Region, points: np.ndarray) -> np.ndarray:
    """Signed angular distance of points outside the closed region, negative inside."""
    points = np.atleast_2d(points)
    if isinstance(region, Cap):
        return np.atleast_1d(spherical_distance(region.center, points)) - region.radius
    heights = np.arcsin(np.clip(np.abs(points @ region.normal), 0.0, 1.0))
    return heights - region.half_width


def sampled_containment(
    outer: Region, inner: Region, samples: int = 100_000, seed: int = 0, max_witnesses: int = 10
) -> OracleReport:
    """Check containment of ``inner`` in ``outer`` on uniform samples of ``inner``.

    Caps are sampled area-uniformly, zones by rejection from the uniform sphere measure. Batch ``k`` uses the
    generator seeded with ``[seed, k]``.

    Parameters
    ----------
    outer:
        containing cap or zone
    inner:
        contained cap or zone
    samples:
        number of sampled points of ``inner``
    seed:
        base seed
    max_witnesses:
        largest number of reported points, the most violating ones are kept

    Returns
    -------
    :
        report with the points of ``inner`` farther than ``EPS_GEOM`` outside ``outer``; ``max_violation`` is the
        largest signed distance outside ``outer``, negative when every sample is strictly inside

    Examples
    --------
    >>> import numpy as np
    >>> cap = Cap(np.array([0.0, 0.0, 1.0]), 0.3)
    >>> sampled_containment(cap, cap, samples=1000).passed
    True
    """
    if _dim(outer) != _dim(inner):
        raise ValidationError(f"Regions live on S^{outer.dim} and S^{inner.dim}")
    if samples < 1:
        raise ValidationError(f"samples should be positive, {samples} given")

    worst = -math.inf
    violators: List[Tuple[float, np.ndarray]] = []
    for batch, start in enumerate(range(0, samples, SAMPLE_BATCH_SIZE)):
        size = min(SAMPLE_BATCH_SIZE, samples - start)
        points = _sample(inner, size, np.random.default_rng([seed, batch]))
        outside = distance_outside(outer, points)
        worst = max(worst, float(outside.max()))
        bad = np.flatnonzero(outside > EPS_GEOM)
        violators.extend((float(outside[idx]), points[idx]) for idx in bad)
        if len(violators) > max_witnesses:
            violators = sorted(violators, key=lambda item: -item[0])[:max_witnesses]

    witnesses = [point for _, point in sorted(violators, key=lambda item: -item[0])]
    return OracleReport.from_witnesses(checked=samples, witnesses=witnesses, max_violation=worst)


def _random_zone_pair(dim: int, rng: np.random.Generator, kind: int) -> Tuple[Zone, Zone]:
    """Random pair of zones: ``kind`` 0 is nested, 1 is not nested, 2 sits on the containment boundary."""
    outer_width = rng.uniform(0.05, 1.2)
    inner_width = rng.uniform(0.01, outer_width) if kind != 1 else rng.uniform(0.01, 1.2)
    room = outer_width - inner_width
    if kind == 0:
        angle = rng.uniform(0.0, max(room, 0.0))
    elif kind == 1:
        angle = min(max(room, 0.0) + rng.uniform(0.05, 0.3), HALF_PI)
    else:
        angle = max(room + rng.uniform(-1e-7, 1e-7), 0.0)
    outer_normal = sample_sphere(dim, 1, rng)[0]
    inner_normal = point_at_distance(outer_normal, angle, rng)
    return Zone(outer_normal, outer_width), Zone(inner_normal, inner_width)


def _zone_pair_case(dim: int, samples: int, seed: int, idx: int, band: float) -> Optional[dict]:
    rng = np.random.default_rng([seed, idx])
    outer, inner = _random_zone_pair(dim, rng, idx % 3)
    slack = zone_slack(outer, inner)
    if abs(slack) <= band:
        return None
    analytic = zone_contains_zone(outer, inner)
    sampled = sampled_containment(outer, inner, samples=samples, seed=seed + idx + 1, max_witnesses=1)
    return {
        "pair": idx,
        "slack": slack,
        "analytic": analytic,
        "sampled": sampled.passed,
        "outer_normal": outer.normal,
        "inner_normal": inner.normal,
    }


def zone_criterion_harness(
    pairs: int = 1000,
    samples: int = 10_000,
    seed: int = 0,
    band: float = ZONE_CRITERION_BAND,
    dim: int = 2,
    n_jobs: int = 1,
) -> OracleReport:
    """Compare the analytic zone containment criterion with sampled containment on random zone pairs.

    Pairs cycle through nested, non-nested and boundary configurations; pairs with ``|slack| <= band`` are
    excluded, sampling cannot decide them. A witness is a pair where the two verdicts differ.

    Returns
    -------
    :
        ``checked`` counts the compared pairs; ``details["excluded"]`` counts pairs inside the band
    """
    if pairs < 1:
        raise ValidationError(f"pairs should be positive, {pairs} given")
    covlogger.log(f"Zone criterion check on {pairs} pairs with {samples} samples each")
    cases = Parallel(n_jobs=n_jobs)(delayed(_zone_pair_case)(dim, samples, seed, idx, band) for idx in range(pairs))
    compared = [case for case in cases if case is not None]
    witnesses = [case for case in compared if case["analytic"] != case["sampled"]]
    max_violation = max((abs(case["slack"]) for case in witnesses), default=0.0)
    return OracleReport.from_witnesses(
        checked=len(compared), witnesses=witnesses, max_violation=max_violation, excluded=pairs - len(compared)
    )


def verify_cover(cover_cap: Cap, caps: Sequence[Cap], samples: int = 10_000, seed: int = 0) -> OracleReport:
    """Re-check a cover cap against every covered cap, analytically and on samples.

    Cap ``k`` is sampled with seed ``seed + k``. A witness is a cap failing either check.
    """
    witnesses = []
    worst = -math.inf
    analytic_failures = sampled_failures = 0
    for idx, cap in enumerate(caps):
        slack = cap_slack(cover_cap, cap)
        analytic = cap_contains_cap(cover_cap, cap)
        sampled = sampled_containment(cover_cap, cap, samples=samples, seed=seed + idx, max_witnesses=1)
        worst = max(worst, -slack, sampled.max_violation)
        analytic_failures += int(not analytic)
        sampled_failures += int(not sampled.passed)
        if not analytic or not sampled.passed:
            witnesses.append(
                {
                    "cap": idx,
                    "slack": slack,
                    "analytic": analytic,
                    "sampled": sampled.passed,
                    "point": sampled.witnesses[0] if sampled.witnesses else None,
                }
            )
    return OracleReport.from_witnesses(
        checked=len(caps) * samples,
        witnesses=witnesses,
        max_violation=worst,
        analytic_failures=analytic_failures,
        sampled_failures=sampled_failures,
    )


__all__ = [
    "sampled_containment",
    "distance_outside",
    "zone_criterion_harness",
    "verify_cover",
    "ZONE_CRITERION_BAND",
]
