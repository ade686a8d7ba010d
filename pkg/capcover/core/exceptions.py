from typing import Any
from typing import Dict
from typing import Optional


class CapCoverError(Exception):
    """Base class for all capcover errors."""


class ValidationError(CapCoverError, ValueError):
    """Input object violates its domain invariants."""


class HypothesisError(ValidationError):
    """Instance violates a hypothesis of the cover construction (e.g. sum of radii is not below pi/2)."""


class UnsupportedSizeError(CapCoverError, ValueError):
    """Requested enumeration exceeds the supported combinatorial budget."""


class InternalInvariantError(CapCoverError, AssertionError):
    """Invariant that upstream code guarantees does not hold; indicates a bug."""


class ConstructionError(CapCoverError, RuntimeError):
    """Constructed object failed its containment assertion.

    Parameters
    ----------
    message:
        human readable description
    dump:
        diagnostic values collected at the failure point
    """

    def __init__(self, message: str, dump: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.dump = dump or {}

    def __str__(self):
        if not self.dump:
            return super().__str__()
        details = ", ".join(f"{key}={value!r}" for key, value in self.dump.items())
        return f"{super().__str__()} [{details}]"


class CoverFailureError(ConstructionError):
    """Final covering zone does not contain every input zone."""


class SeparableInputError(CapCoverError):
    """Cover refused: the family of caps is separable by an avoiding great sphere."""

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(
            f"Family is separable: normal {list(verdict.witness_normal)} with pattern "
            f"{list(verdict.witness_pattern.signs)} splits it, margin {verdict.best_margin:.3e}"
        )


class UndecidedSeparabilityError(CapCoverError):
    """Cover refused: the separability check could not certify the family either way."""

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(
            f"Separability is undecided after {verdict.patterns_checked} patterns, "
            f"best margin {verdict.best_margin:.3e}; "
            "raise solver budgets or skip the check"
        )


class DiagnosticError(CapCoverError, RuntimeError):
    """Two mathematically equivalent computations disagree beyond tolerance."""


class MalformedFileError(ValidationError):
    """Instance or certificate file does not follow its schema.

    Parameters
    ----------
    message:
        what is wrong
    line:
        1-based line of the offending field, if known
    field:
        dotted path of the offending field, if known
    """

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field {field}")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")


__all__ = [
    "CapCoverError",
    "ValidationError",
    "HypothesisError",
    "UnsupportedSizeError",
    "InternalInvariantError",
    "ConstructionError",
    "CoverFailureError",
    "SeparableInputError",
    "UndecidedSeparabilityError",
    "DiagnosticError",
    "MalformedFileError",
]
