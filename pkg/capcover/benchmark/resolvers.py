import math


def pi(numerator: int, denominator: int = 1) -> float:
    """Return ``pi * numerator / denominator``, used as ``${pi:1,12}`` in suite files."""
    return math.pi * numerator / denominator
