import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numba
import numpy as np
from scipy.optimize import minimize

from capcover.core import BaseMixin
from capcover.core.exceptions import ValidationError
from capcover.separability.patterns import SignPattern
from capcover.settings import SETTINGS
from capcover.sphere import EPS_FEAS
from capcover.sphere import Cap
from capcover.sphere import Instance


class ProbeStatus(str, Enum):
    """Outcome of a single pattern feasibility probe."""

    feasible = "feasible"
    infeasible = "infeasible"
    indeterminate = "indeterminate"


@dataclass(frozen=True, eq=False)
class PatternProbe:
    """Result of testing whether the signed dual caps ``eps_i D'_i`` have a common point.

    Attributes
    ----------
    pattern:
        tested sign pattern
    margin:
        certified lower bound of ``max min_i (eps_i <x, c_i> - sin a_i)``; for a feasible probe it is
        the margin of the unit witness itself
    upper_bound:
        certified upper bound of the same maximum over the unit ball (Lagrange dual value)
    witness:
        unit normal with ``eps_i <n, c_i> > sin a_i`` for all i, present only for feasible probes
    status:
        feasible, infeasible or indeterminate
    """

    pattern: SignPattern
    margin: float
    upper_bound: float
    witness: Optional[np.ndarray]
    status: ProbeStatus


@numba.njit
def _ascend(a: np.ndarray, s: np.ndarray, x0: np.ndarray, max_iters: int, step_scale: float):
    """Projected supergradient ascent of ``min_i(<x, a_i> - s_i)`` over the closed unit ball."""
    n, size = a.shape
    x = x0.copy()
    best_x = x0.copy()
    best = -np.inf
    for k in range(1, max_iters + 1):
        worst = np.inf
        worst_idx = 0
        for i in range(n):
            value = -s[i]
            for j in range(size):
                value += a[i, j] * x[j]
            if value < worst:
                worst = value
                worst_idx = i
        if worst > best:
            best = worst
            for j in range(size):
                best_x[j] = x[j]
        step = step_scale / math.sqrt(k)
        norm2 = 0.0
        for j in range(size):
            x[j] += step * a[worst_idx, j]
            norm2 += x[j] * x[j]
        if norm2 > 1.0:
            norm = math.sqrt(norm2)
            for j in range(size):
                x[j] /= norm
    return best_x, best


@numba.njit
def _dual_value(a: np.ndarray, s: np.ndarray, lam: np.ndarray):
    n, size = a.shape
    v = np.zeros(size)
    offset = 0.0
    for i in range(n):
        offset += lam[i] * s[i]
        for j in range(size):
            v[j] += lam[i] * a[i, j]
    norm = 0.0
    for j in range(size):
        norm += v[j] * v[j]
    norm = math.sqrt(norm)
    return norm - offset, v, norm


@numba.njit
def _dual_descent(a: np.ndarray, s: np.ndarray, max_iters: int, step_scale: float):
    """Exponentiated-gradient descent of ``|sum lam_i a_i| - sum lam_i s_i`` over the simplex.

    Every simplex point gives an upper bound of the primal maximum, the best one is returned.
    """
    n, size = a.shape
    lam = np.full(n, 1.0 / n)
    best_lam = lam.copy()
    best = np.inf
    grad = np.zeros(n)
    for k in range(1, max_iters + 1):
        value, v, norm = _dual_value(a, s, lam)
        if value < best:
            best = value
            best_lam[:] = lam
        for i in range(n):
            inner = 0.0
            if norm > 0.0:
                for j in range(size):
                    inner += a[i, j] * v[j]
                inner /= norm
            grad[i] = inner - s[i]
        step = step_scale / math.sqrt(k)
        total = 0.0
        for i in range(n):
            lam[i] *= math.exp(-step * grad[i])
            total += lam[i]
        for i in range(n):
            lam[i] /= total
    return best_lam, best


def _signed_data(caps: Sequence[Cap], pattern: SignPattern) -> Tuple[np.ndarray, np.ndarray]:
    if len(pattern) != len(caps):
        raise ValidationError(f"Pattern of length {len(pattern)} does not match {len(caps)} caps")
    centers = np.stack([cap.center for cap in caps])
    a = np.ascontiguousarray(pattern.as_array()[:, None] * centers)
    s = np.array([math.sin(cap.radius) for cap in caps])
    return a, s


def _sphere_margin(a: np.ndarray, s: np.ndarray, normal: np.ndarray) -> float:
    return float(np.min(a @ normal - s))


def _as_caps(caps: Union[Instance, Sequence[Cap]]) -> Sequence[Cap]:
    if isinstance(caps, Instance):
        return caps.caps
    caps = tuple(caps)
    if not caps:
        raise ValidationError("At least one cap required")
    return caps


class PatternFeasibilitySolver(BaseMixin):
    """Decide whether the signed open dual caps ``eps_i D'_i`` have a common point.

    The primal side maximizes the concave ``g(x) = min_i(<x, eps_i c_i> - sin a_i)`` over the closed unit ball by
    projected supergradient ascent with step ``step_scale / sqrt(k)``; ``g > 0`` at some x is equivalent to a unit
    normal ``n = x / |x|`` with ``eps_i <n, c_i> > sin a_i`` for all i. The dual side bounds the same maximum from
    above by ``min over the simplex of |sum lam_i eps_i c_i| - sum lam_i sin a_i``. Undecided probes are polished
    with SLSQP on both sides.

    Starts of the ascent: normalized mean of ``eps_i c_i``, every ``eps_i c_i``, then random points of the sphere.
    """

    def __init__(
        self,
        max_iters: Optional[int] = None,
        restarts: Optional[int] = None,
        step_scale: float = 0.5,
        seed: Optional[int] = None,
        polish: bool = True,
    ):
        """Init PatternFeasibilitySolver.

        Parameters
        ----------
        max_iters:
            iterations per ascent run and of the dual descent; ``SETTINGS.max_iters`` if not set
        restarts:
            number of random restarts on top of the deterministic starts; ``SETTINGS.restarts`` if not set
        step_scale:
            constant c of the step schedule c / sqrt(k)
        seed:
            seed of random restarts; ``SETTINGS.seed`` if not set
        polish:
            run SLSQP on undecided probes
        """
        self.max_iters = max_iters
        self.restarts = restarts
        self.step_scale = step_scale
        self.seed = seed
        self.polish = polish
        self._max_iters = SETTINGS.max_iters if max_iters is None else int(max_iters)
        self._restarts = SETTINGS.restarts if restarts is None else int(restarts)
        self._seed = SETTINGS.seed if seed is None else int(seed)
        self._validate_budget(self._max_iters, self._restarts, step_scale)

    @staticmethod
    def _validate_budget(max_iters: int, restarts: int, step_scale: float):
        if max_iters < 1:
            raise ValidationError(f"max_iters should be positive, {max_iters} given")
        if restarts < 0:
            raise ValidationError(f"restarts should be non-negative, {restarts} given")
        if not step_scale > 0:
            raise ValidationError(f"step_scale should be positive, {step_scale} given")

    def _starts(self, a: np.ndarray, rng: np.random.Generator):
        mean = a.mean(axis=0)
        norm = np.linalg.norm(mean)
        if norm > 0:
            yield mean / norm
        for row in a:
            yield row.copy()
        for _ in range(self._restarts):
            point = rng.standard_normal(a.shape[1])
            yield point / np.linalg.norm(point)

    def _polish_primal(self, a: np.ndarray, s: np.ndarray, x0: np.ndarray) -> Tuple[np.ndarray, float]:
        size = a.shape[1]
        start = np.append(x0, float(np.min(a @ x0 - s)))
        result = minimize(
            fun=lambda z: -z[-1],
            x0=start,
            jac=lambda z: np.append(np.zeros(size), -1.0),
            method="SLSQP",
            constraints=[
                {"type": "ineq", "fun": lambda z: a @ z[:-1] - s - z[-1]},
                {"type": "ineq", "fun": lambda z: 1.0 - z[:-1] @ z[:-1]},
            ],
            options={"maxiter": 200, "ftol": 1e-14},
        )
        x = result.x[:-1]
        norm = np.linalg.norm(x)
        if norm > 1.0:
            x = x / norm
        return x, float(np.min(a @ x - s))

    def _polish_dual(self, a: np.ndarray, s: np.ndarray, lam0: np.ndarray) -> float:
        n = a.shape[0]

        def objective(lam):
            return float(np.linalg.norm(lam @ a) - lam @ s)

        result = minimize(
            fun=objective,
            x0=lam0,
            method="SLSQP",
            bounds=[(0.0, 1.0)] * n,
            constraints=[{"type": "eq", "fun": lambda lam: lam.sum() - 1.0}],
            options={"maxiter": 200, "ftol": 1e-14},
        )
        # any simplex point is a valid bound once projected back
        lam = np.clip(result.x, 0.0, None)
        if lam.sum() == 0:
            return objective(lam0)
        return objective(lam / lam.sum())

    def _feasible_probe(self, pattern: SignPattern, a: np.ndarray, s: np.ndarray, x: np.ndarray) -> PatternProbe:
        witness = x / np.linalg.norm(x)
        margin = _sphere_margin(a, s, witness)
        return PatternProbe(
            pattern=pattern, margin=margin, upper_bound=np.inf, witness=witness, status=ProbeStatus.feasible
        )

    def probe(self, caps: Union[Instance, Sequence[Cap]], pattern: SignPattern, stream: int = 0) -> PatternProbe:
        """Test one sign pattern.

        Parameters
        ----------
        caps:
            instance or sequence of caps
        pattern:
            sign pattern of the same length
        stream:
            index mixed into the seed of random restarts, so that probes are independent of evaluation order

        Returns
        -------
        :
            probe with margin, dual bound, witness and status
        """
        caps = _as_caps(caps)
        a, s = _signed_data(caps, pattern)
        rng = np.random.default_rng([self._seed, stream])

        best_x, best = None, -np.inf
        upper_bound = np.inf
        best_lam = None
        for run, start in enumerate(self._starts(a, rng)):
            x, value = _ascend(a, s, np.ascontiguousarray(start), self._max_iters, self.step_scale)
            if value > best:
                best_x, best = x, value
            if best > EPS_FEAS:
                return self._feasible_probe(pattern, a, s, best_x)
            if run == 0:
                best_lam, upper_bound = _dual_descent(a, s, self._max_iters, self.step_scale)
                if upper_bound < -EPS_FEAS:
                    return PatternProbe(
                        pattern=pattern,
                        margin=float(best),
                        upper_bound=float(upper_bound),
                        witness=None,
                        status=ProbeStatus.infeasible,
                    )

        if self.polish:
            x, value = self._polish_primal(a, s, best_x)
            if value > best:
                best_x, best = x, value
            if best > EPS_FEAS:
                return self._feasible_probe(pattern, a, s, best_x)
            upper_bound = min(upper_bound, self._polish_dual(a, s, best_lam))

        status = ProbeStatus.infeasible if upper_bound < -EPS_FEAS else ProbeStatus.indeterminate
        return PatternProbe(
            pattern=pattern, margin=float(best), upper_bound=float(upper_bound), witness=None, status=status
        )


def pattern_feasible(
    caps: Union[Instance, Sequence[Cap]], pattern: SignPattern, solver: Optional[PatternFeasibilitySolver] = None
) -> Tuple[float, Optional[np.ndarray]]:
    """Compute feasibility margin of the pattern and the witness normal if the margin exceeds ``EPS_FEAS``.

    Examples
    --------
    >>> import numpy as np
    >>> from capcover.sphere import Cap
    >>> margin, witness = pattern_feasible([Cap(np.array([0.0, 0.0, 1.0]), np.pi / 6)], SignPattern((1,)))
    >>> round(margin, 12)
    0.5
    """
    solver = PatternFeasibilitySolver() if solver is None else solver
    probe = solver.probe(caps, pattern)
    return probe.margin, probe.witness


def pattern_margin_debug(
    caps: Union[Instance, Sequence[Cap]], pattern: SignPattern, solver: Optional[PatternFeasibilitySolver] = None
) -> PatternProbe:
    """Probe a pattern as given, without reducing it to ``eps_1 = +1``.

    Margins of ``pattern`` and ``pattern.negated()`` coincide; tests use this to check the sign symmetry.
    """
    solver = PatternFeasibilitySolver() if solver is None else solver
    return solver.probe(caps, pattern)


__all__ = [
    "ProbeStatus",
    "PatternProbe",
    "PatternFeasibilitySolver",
    "pattern_feasible",
    "pattern_margin_debug",
]
