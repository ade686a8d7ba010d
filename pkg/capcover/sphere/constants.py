import math

#: tolerance of unit-norm checks
EPS_UNIT = 1e-12
#: tolerance of geometric predicates (containment, plank membership, violations)
EPS_GEOM = 1e-9
#: tolerance of feasibility margins (separability decisions)
EPS_FEAS = 1e-7

HALF_PI = math.pi / 2

__all__ = ["EPS_UNIT", "EPS_GEOM", "EPS_FEAS", "HALF_PI"]
