import math
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from typing import Any
from typing import Dict
from typing import List

import numpy as np


class OracleVerdict(str, Enum):
    """Outcome of a brute-force oracle."""

    passed = "pass"
    failed = "fail"


@dataclass(frozen=True, eq=False)
class OracleReport:
    """Result of a brute-force check.

    Attributes
    ----------
    checked:
        number of evaluated samples, directions or cases
    witnesses:
        counterexamples (points, normals or case descriptions), at most the oracle's witness budget
    verdict:
        pass iff ``witnesses`` is empty
    max_violation:
        largest violation amount seen; its meaning is oracle specific
    details:
        extra counters of the oracle
    """

    checked: int
    witnesses: List[Any]
    verdict: OracleVerdict
    max_violation: float
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_witnesses(
        cls, checked: int, witnesses: List[Any], max_violation: float, **details: Any
    ) -> "OracleReport":
        """Build report, the verdict follows from the witnesses."""
        verdict = OracleVerdict.failed if witnesses else OracleVerdict.passed
        return cls(
            checked=int(checked),
            witnesses=list(witnesses),
            verdict=verdict,
            max_violation=float(max_violation),
            details=details,
        )

    @property
    def passed(self) -> bool:
        """True if no counterexample was found."""
        return self.verdict is OracleVerdict.passed

    def to_dict(self) -> Dict[str, Any]:
        """JSON-friendly view of the report."""
        return {
            "verdict": self.verdict.value,
            "checked": self.checked,
            "max_violation": self.max_violation if np.isfinite(self.max_violation) else None,
            "witnesses": [_jsonable(witness) for witness in self.witnesses],
            "details": {key: _jsonable(value) for key, value in self.details.items()},
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    return value


__all__ = ["OracleVerdict", "OracleReport"]
