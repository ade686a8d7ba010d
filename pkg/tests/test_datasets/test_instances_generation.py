import math

import numpy as np
import pytest

from capcover.core.exceptions import HypothesisError
from capcover.core.exceptions import ValidationError
from capcover.datasets import gen_chain
from capcover.datasets import gen_random_tree
from capcover.datasets import gen_separable
from capcover.separability import PatternFeasibilitySolver
from capcover.separability import SeparabilityStatus
from capcover.separability import caps_intersect
from capcover.separability import check_nonseparable
from capcover.separability import overlap_components
from capcover.sphere import spherical_distance


@pytest.mark.parametrize("dim", [1, 2, 4])
def test_chain_is_tangent(dim):
    chain = gen_chain(dim, 4, [0.1, 0.2, 0.15, 0.05], seed=dim)
    assert chain.n == 4 and chain.dim == dim
    for first, second in zip(chain.caps, chain.caps[1:]):
        distance = spherical_distance(first.center, second.center)
        assert distance == pytest.approx(first.radius + second.radius, abs=1e-12)


def test_chain_overlap_factor():
    chain = gen_chain(2, 3, 0.2, overlap_factor=0.5, seed=0)
    assert spherical_distance(chain.caps[0].center, chain.caps[1].center) == pytest.approx(0.2)
    assert len(overlap_components(chain.caps)) == 1


def test_chain_along_given_geodesic():
    chain = gen_chain(2, 2, math.pi / 12, geodesic=(np.array([1.0, 0.0, 0.0]), np.array([0.0, 0.0, 1.0])))
    np.testing.assert_allclose(chain.caps[0].center, [1.0, 0.0, 0.0])
    np.testing.assert_allclose(chain.caps[1].center, [math.cos(math.pi / 6), 0.0, math.sin(math.pi / 6)])


def test_chain_is_seeded():
    assert gen_chain(3, 3, 0.1, seed=4) == gen_chain(3, 3, 0.1, seed=4)


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"radii": 0.6}, HypothesisError),
        ({"radii": 0.1, "overlap_factor": 1.5}, HypothesisError),
        ({"radii": [0.1, 0.1]}, ValidationError),
        ({"radii": -0.1}, ValidationError),
        ({"radii": 0.1, "geodesic": (np.array([1.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0]))}, ValidationError),
    ],
)
def test_chain_rejects(kwargs, error):
    with pytest.raises(error):
        gen_chain(2, 3, **kwargs)


@pytest.mark.parametrize("seed", range(3))
def test_separable_generator(seed):
    instance = gen_separable(2, seed=seed)
    assert instance.n == 2
    assert not caps_intersect(*instance.caps)
    verdict = check_nonseparable(instance, PatternFeasibilitySolver(max_iters=1000, restarts=2, seed=0), n_jobs=1)
    assert verdict.status is SeparabilityStatus.separable


@pytest.mark.parametrize("seed", range(5))
def test_random_tree_is_connected(seed):
    tree = gen_random_tree(3, 8, seed=seed, total_radius=1.0)
    assert tree.n == 8
    assert tree.sum_radii == pytest.approx(1.0)
    assert len(overlap_components(tree.caps)) == 1


def test_random_tree_default_radius():
    tree = gen_random_tree(2, 5, seed=1)
    assert 0.1 <= tree.sum_radii < math.pi / 2 - 1e-2


@pytest.mark.parametrize("total_radius", [0.0, math.pi / 2])
def test_random_tree_rejects_radius(total_radius):
    with pytest.raises(HypothesisError):
        gen_random_tree(2, 3, total_radius=total_radius)
