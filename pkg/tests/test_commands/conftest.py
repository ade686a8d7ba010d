import math
from pathlib import Path

import numpy as np
import pytest
from typer.testing import CliRunner

from capcover.datasets import gen_chain
from capcover.serialization import save_instance
from capcover.sphere import Cap
from capcover.sphere import Instance


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def chain_path(tmp_path, tangent_chain_instance) -> Path:
    path = tmp_path / "chain.json"
    save_instance(tangent_chain_instance, path)
    return path


@pytest.fixture
def overlapping_chain_path(tmp_path) -> Path:
    path = tmp_path / "overlapping.json"
    save_instance(gen_chain(2, 3, math.pi / 12, overlap_factor=0.5, seed=4), path)
    return path


@pytest.fixture
def antipodal_path(tmp_path, antipodal_instance) -> Path:
    path = tmp_path / "antipodal.json"
    save_instance(antipodal_instance, path)
    return path


@pytest.fixture
def wide_path(tmp_path) -> Path:
    """Three orthogonal caps of radius pi/6, radii sum to pi/2."""
    path = tmp_path / "wide.json"
    save_instance(Instance(dim=2, caps=tuple(Cap(center, math.pi / 6) for center in np.eye(3))), path)
    return path


@pytest.fixture
def malformed_path(tmp_path) -> Path:
    path = tmp_path / "malformed.json"
    path.write_text('{\n  "format_version": 1,\n  "dim": 2,\n  "caps": [{"center": [1, 0], "radius": 0.1}]\n}\n')
    return path
