import math

from omegaconf import OmegaConf

import capcover.benchmark  # noqa: F401
from capcover.benchmark.resolvers import pi


def test_pi_fraction():
    assert pi(1, 12) == math.pi / 12
    assert pi(2) == 2 * math.pi


def test_pi_resolver_registered():
    config = OmegaConf.create({"radius": "${pi:1,6}"})
    assert config.radius == math.pi / 6
