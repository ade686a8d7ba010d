import math

import numpy as np
import pytest

from capcover.core.exceptions import ValidationError
from capcover.datasets import gen_chain
from capcover.oracle import minimal_enclosing_cap_estimate
from capcover.sphere import EPS_GEOM
from capcover.sphere import Cap
from capcover.sphere import cap_contains_cap


def test_single_cap():
    center, radius = minimal_enclosing_cap_estimate([Cap([0.0, 1.0, 0.0], 0.4)])
    np.testing.assert_allclose(center, [0.0, 1.0, 0.0], atol=1e-9)
    assert radius == pytest.approx(0.4)


def test_tangent_pair_is_tight(tangent_pair_instance):
    center, radius = minimal_enclosing_cap_estimate(tangent_pair_instance, iters=500, restarts=2)
    assert radius == pytest.approx(math.pi / 3, abs=1e-6)
    np.testing.assert_allclose(center, [math.sqrt(3) / 2, 0.5, 0.0], atol=1e-4)


@pytest.mark.parametrize("seed", range(3))
def test_estimate_within_sum_of_radii(seed):
    chain = gen_chain(2, 4, math.pi / 16, overlap_factor=0.5, seed=seed)
    center, radius = minimal_enclosing_cap_estimate(chain, iters=500, restarts=2, seed=seed)
    assert radius <= chain.sum_radii + EPS_GEOM
    assert all(cap_contains_cap(Cap(center, radius), cap) for cap in chain.caps)


def test_rejects_empty():
    with pytest.raises(ValidationError, match="At least one cap"):
        minimal_enclosing_cap_estimate([])
