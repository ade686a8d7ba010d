import json
import math

import pytest

from capcover.commands.__main__ import app
from capcover.serialization import load_instance


def test_gen_chain_stdout(runner):
    result = runner.invoke(app, ["gen", "chain", "--dim", "2", "--n", "4", "--seed", "3"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["format_version"] == 1
    assert data["dim"] == 2
    assert len(data["caps"]) == 4
    assert all(cap["radius"] == pytest.approx(math.pi / 16) for cap in data["caps"])


def test_gen_to_file(runner, tmp_path):
    out = tmp_path / "tree.json"
    result = runner.invoke(app, ["gen", "tree", "--dim", "3", "--n", "5", "--out", str(out)])
    assert result.exit_code == 0
    instance = load_instance(out)
    assert instance.dim == 3
    assert instance.n == 5
    assert instance.sum_radii < math.pi / 2


def test_gen_is_seeded(runner):
    first = runner.invoke(app, ["gen", "separable", "--seed", "9"])
    second = runner.invoke(app, ["gen", "separable", "--seed", "9"])
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout


def test_gen_rejects_bad_overlap(runner):
    result = runner.invoke(app, ["gen", "chain", "--overlap", "2.0"])
    assert result.exit_code == 64
    assert "overlap_factor" in result.output


def test_gen_unknown_kind(runner):
    result = runner.invoke(app, ["gen", "spiral"])
    assert result.exit_code == 2
