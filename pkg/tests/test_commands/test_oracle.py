import json

import pytest

from capcover.commands.__main__ import app


def test_grid_sep_passes_on_chain(runner, chain_path):
    result = runner.invoke(app, ["oracle", "grid-sep", str(chain_path), "--resolution", "50000"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["verdict"] == "pass"


def test_grid_sep_fails_on_separable(runner, antipodal_path):
    result = runner.invoke(app, ["oracle", "grid-sep", str(antipodal_path), "--resolution", "20000"])
    assert result.exit_code == 1
    assert json.loads(result.stdout)["witnesses"]


def test_mec_within_sum_of_radii(runner, overlapping_chain_path):
    args = ["oracle", "mec", str(overlapping_chain_path), "--iters", "500", "--restarts", "4", "--jobs", "1"]
    result = runner.invoke(app, args)
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["verdict"] == "pass"
    assert payload["radius"] <= payload["sum_radii"]
    assert payload["separability"]["status"] == "non-separable"


def test_mec_not_applicable_to_separable_family(runner, antipodal_path):
    args = ["oracle", "mec", str(antipodal_path), "--iters", "200", "--restarts", "2", "--jobs", "1"]
    result = runner.invoke(app, args)
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["verdict"] == "not-applicable"
    assert payload["separability"]["status"] == "separable"
    assert "radius" not in payload


@pytest.mark.parametrize(
    "args",
    [
        ["lemma7", "--families", "20", "--samples", "20", "--jobs", "1"],
        ["eq2", "--families", "5", "--samples", "200", "--jobs", "1"],
        ["zone-criterion", "--pairs", "6", "--samples", "3000", "--jobs", "1"],
        ["sep-agreement", "--instances", "3", "--resolution", "50000", "--margin-band", "0.05"],
    ],
)
def test_harnesses_pass(runner, args):
    result = runner.invoke(app, ["oracle", *args])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["verdict"] == "pass"


def test_harness_rejects_bad_budget(runner):
    result = runner.invoke(app, ["oracle", "lemma7", "--max-caps", "40"])
    assert result.exit_code == 64
