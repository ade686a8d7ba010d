import math

import numpy as np
import pytest

from capcover.datasets import gen_chain
from capcover.sphere import Cap
from capcover.sphere import Instance

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


@pytest.fixture(autouse=True)
def random_seed():
    """Fixture to fix random state for every test case."""
    import random

    SEED = 121  # noqa: N806
    random.seed(SEED)
    np.random.seed(SEED)


@pytest.fixture
def single_cap_instance() -> Instance:
    return Instance(dim=2, caps=(Cap(E1, math.pi / 6),))


@pytest.fixture
def tangent_pair_instance() -> Instance:
    """Two caps of radius pi/6 touching at distance pi/3."""
    second = np.array([0.5, math.sqrt(3) / 2, 0.0])
    return Instance(dim=2, caps=(Cap(E1, math.pi / 6), Cap(second, math.pi / 6)))


@pytest.fixture
def tangent_chain_instance() -> Instance:
    """Three caps of radius pi/12 along the equator, consecutive caps tangent."""
    return gen_chain(2, 3, math.pi / 12, geodesic=(E1, E2))


@pytest.fixture
def antipodal_instance() -> Instance:
    """Two caps of radius pi/12 at +-e_3, split by the equator."""
    return Instance(dim=2, caps=(Cap(E3, math.pi / 12), Cap(-E3, math.pi / 12)))
