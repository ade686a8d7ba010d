from typing import Callable
from typing import Optional

import numpy as np
from joblib import Parallel
from joblib import delayed

from capcover.bang import MaxNormSigner
from capcover.bang import a_w_forms
from capcover.bang import in_A_w
from capcover.bang import in_bang_cell
from capcover.bang import max_in_translate_gap
from capcover.bang import outside_planks
from capcover.core.exceptions import DiagnosticError
from capcover.core.exceptions import ValidationError
from capcover.loggers import covlogger
from capcover.oracle.reports import OracleReport
from capcover.separability import SignPattern
from capcover.sphere import EPS_GEOM
from capcover.sphere import sample_sphere

CellPredicate = Callable[[np.ndarray, SignPattern, np.ndarray], np.ndarray]

MAX_HARNESS_CAPS = 6
EQ2_BAND = 1e-9


def _random_family(dim: int, max_caps: int, rng: np.random.Generator) -> np.ndarray:
    """Random plank vectors with ``sum |w_i| <= 0.9``, so every signed sum lies in the unit ball."""
    n = int(rng.integers(1, max_caps + 1))
    norms = rng.uniform(0.02, 0.9 / n, size=n)
    return norms[:, None] * sample_sphere(dim, n, rng)


def _ball_points(dim: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform points of the open unit ball of R^{dim + 1}."""
    radii = rng.uniform(0.0, 1.0, size=size) ** (1.0 / (dim + 1))
    return radii[:, None] * sample_sphere(dim, size, rng)


def _towards_cell(x: np.ndarray, size: int, rng: np.random.Generator) -> np.ndarray:
    """Points ``-lam x + noise`` with ``lam >= 1``, clipped into the open unit ball."""
    norm = np.linalg.norm(x)
    scales = rng.uniform(1.0, max(1.0, 0.999 / norm), size=size)
    points = -scales[:, None] * x[None, :] + 1e-3 * rng.standard_normal(size=(size, x.shape[0]))
    lengths = np.linalg.norm(points, axis=1, keepdims=True)
    return np.where(lengths >= 0.999, 0.999 * points / lengths, points)


def _cell_deficit(ts: np.ndarray, pattern: SignPattern, vectors: np.ndarray) -> np.ndarray:
    """Largest failure amount of the Bang cell and plank inequalities, per point."""
    norms2 = np.sum(vectors ** 2, axis=1)
    cell = norms2 + ts @ (pattern.as_array()[:, None] * vectors).T
    plank = norms2 - np.abs(ts @ vectors.T)
    return np.maximum(cell, plank).max(axis=1)


def _lemma7_family(
    dim: int, max_caps: int, samples: int, seed: int, idx: int, cell_predicate: CellPredicate
) -> dict:
    rng = np.random.default_rng([seed, idx])
    vectors = _random_family(dim, max_caps, rng)
    n = vectors.shape[0]
    maximal = MaxNormSigner(exact_threshold=n).sign(vectors).signs_applied
    random_pattern = SignPattern(tuple(int(sign) for sign in rng.choice([-1, 1], size=n)))

    uniform_size = samples // 2
    batches = [
        (random_pattern, _ball_points(dim, uniform_size, rng)),
        (maximal, _towards_cell(maximal.as_array() @ vectors, samples - uniform_size, rng)),
    ]
    hits = 0
    witnesses = []
    worst = 0.0
    for pattern, ts in batches:
        if ts.shape[0] == 0:
            continue
        premise = max_in_translate_gap(ts, pattern, vectors) >= -EPS_GEOM
        chosen = ts[premise]
        hits += chosen.shape[0]
        if chosen.shape[0] == 0:
            continue
        holds = np.asarray(cell_predicate(chosen, pattern, vectors), dtype=bool) & np.asarray(
            outside_planks(chosen, vectors), dtype=bool
        )
        bad = chosen[~holds]
        if bad.shape[0]:
            worst = max(worst, float(_cell_deficit(bad, pattern, vectors).max()))
            witnesses.extend(
                {"family": idx, "t": point, "pattern": pattern.signs, "vectors": vectors} for point in bad[:1]
            )
    return {"checked": samples, "hits": hits, "witnesses": witnesses, "worst": worst}


def lemma7_harness(
    families: int = 1000,
    samples_per_family: int = 100,
    seed: int = 0,
    max_caps: int = MAX_HARNESS_CAPS,
    cell_predicate: Optional[CellPredicate] = None,
    dim: int = 2,
    n_jobs: int = 1,
) -> OracleReport:
    """Check that a point of maximal norm in its Bang translate lies in the Bang cell and outside every plank.

    Every family draws random plank vectors. Half of the points are uniform in the unit ball with a random
    pattern, the other half lie on the ray ``-lam x`` of the maximal signed sum x, where the premise holds.
    For every point t with ``|t| = max_{y in L} |t + x - y|`` both conclusions are asserted.

    Parameters
    ----------
    families:
        number of random families
    samples_per_family:
        points per family
    seed:
        base seed, family k uses ``[seed, k]``
    max_caps:
        largest family size, at most 6
    cell_predicate:
        Bang cell membership test ``(points, pattern, vectors) -> bool array``, default ``in_bang_cell``
    dim:
        sphere dimension, vectors live in R^{dim + 1}
    n_jobs:
        joblib workers over families

    Returns
    -------
    :
        one witness per failing family; ``details["premise_hits"]`` counts the points where the premise holds
    """
    if not 1 <= max_caps <= MAX_HARNESS_CAPS:
        raise ValidationError(f"max_caps should lie in [1, {MAX_HARNESS_CAPS}], {max_caps} given")
    if families < 1 or samples_per_family < 1:
        raise ValidationError("families and samples_per_family should be positive")
    cell_predicate = in_bang_cell if cell_predicate is None else cell_predicate
    covlogger.log(f"Bang cell harness: {families} families x {samples_per_family} points")
    results = Parallel(n_jobs=n_jobs)(
        delayed(_lemma7_family)(dim, max_caps, samples_per_family, seed, idx, cell_predicate)
        for idx in range(families)
    )
    witnesses = [witness for result in results for witness in result["witnesses"]]
    return OracleReport.from_witnesses(
        checked=sum(result["checked"] for result in results),
        witnesses=witnesses,
        max_violation=max(result["worst"] for result in results),
        premise_hits=sum(result["hits"] for result in results),
    )


def _eq2_family(dim: int, max_caps: int, samples: int, seed: int, idx: int, band: float) -> dict:
    rng = np.random.default_rng([seed, idx])
    vectors = _random_family(dim, max_caps, rng)
    family = MaxNormSigner(exact_threshold=vectors.shape[0]).sign(vectors)
    w = family.w
    ts = _ball_points(dim, samples, rng)
    gaps = max_in_translate_gap(ts, SignPattern.all_plus(family.n), family.vectors)

    witnesses = []
    worst = 0.0
    implication_checked = converse_checked = converse_agree = 0
    for t, gap in zip(ts, gaps):
        halfspace, distance = a_w_forms(t, w)
        try:
            member = in_A_w(t, w)
        except DiagnosticError:
            witnesses.append({"family": idx, "t": t, "halfspace": halfspace, "distance": distance})
            worst = max(worst, min(abs(halfspace), abs(distance)))
            continue
        if gap >= -EPS_GEOM:
            implication_checked += 1
            if not member and halfspace < -band:
                witnesses.append({"family": idx, "t": t, "gap": gap, "halfspace": halfspace})
                worst = max(worst, -halfspace)
        if member and halfspace > band:
            converse_checked += 1
            converse_agree += int(gap >= band)
    return {
        "checked": samples,
        "witnesses": witnesses[:1],
        "worst": worst,
        "implication_checked": implication_checked,
        "converse_checked": converse_checked,
        "converse_agree": converse_agree,
    }


def eq2_harness(
    families: int = 100,
    samples_per_family: int = 1000,
    seed: int = 0,
    max_caps: int = MAX_HARNESS_CAPS,
    band: float = EQ2_BAND,
    dim: int = 2,
    n_jobs: int = 1,
) -> OracleReport:
    """Check the two forms of ``A_w`` membership on random points of the unit ball.

    Each family is oriented by maximal-norm signing, w is its signed sum. On every point ``in_A_w`` evaluates
    ``<t, -w> >= <w, w>`` and ``|t| >= |t + 2w|``; disagreement beyond ``band`` is a witness. Points of maximal
    norm in ``t + w - L`` must belong to ``A_w``, a violation beyond ``band`` is a witness too. How often ``A_w``
    points are maximal is reported in ``details["converse_rate"]``.
    """
    if not 1 <= max_caps <= MAX_HARNESS_CAPS:
        raise ValidationError(f"max_caps should lie in [1, {MAX_HARNESS_CAPS}], {max_caps} given")
    if families < 1 or samples_per_family < 1:
        raise ValidationError("families and samples_per_family should be positive")
    covlogger.log(f"A_w harness: {families} families x {samples_per_family} points")
    results = Parallel(n_jobs=n_jobs)(
        delayed(_eq2_family)(dim, max_caps, samples_per_family, seed, idx, band) for idx in range(families)
    )
    converse_checked = sum(result["converse_checked"] for result in results)
    converse_agree = sum(result["converse_agree"] for result in results)
    return OracleReport.from_witnesses(
        checked=sum(result["checked"] for result in results),
        witnesses=[witness for result in results for witness in result["witnesses"]],
        max_violation=max(result["worst"] for result in results),
        implication_checked=sum(result["implication_checked"] for result in results),
        converse_rate=converse_agree / converse_checked if converse_checked else float("nan"),
    )


__all__ = ["lemma7_harness", "eq2_harness", "MAX_HARNESS_CAPS", "EQ2_BAND"]
