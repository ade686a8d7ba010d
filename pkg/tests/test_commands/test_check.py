import json

from capcover.commands.__main__ import app


def test_check_non_separable(runner, chain_path):
    result = runner.invoke(app, ["check", str(chain_path), "--jobs", "1"])
    assert result.exit_code == 0
    verdict = json.loads(result.stdout)
    assert verdict["status"] == "non-separable"
    assert verdict["method"] == "overlap"


def test_check_without_overlap_pruning(runner, overlapping_chain_path):
    args = ["check", str(overlapping_chain_path), "--no-overlap", "--restarts", "4", "--iters", "2000", "--jobs", "1"]
    result = runner.invoke(app, args)
    assert result.exit_code == 0
    verdict = json.loads(result.stdout)
    assert verdict["method"] == "solver"
    assert verdict["patterns_checked"] == 3


def test_check_separable(runner, antipodal_path):
    result = runner.invoke(app, ["check", str(antipodal_path), "--jobs", "1"])
    assert result.exit_code == 2
    verdict = json.loads(result.stdout)
    assert verdict["status"] == "separable"
    assert verdict["witness_pattern"] == [1, -1]
    assert len(verdict["witness_normal"]) == 3


def test_check_malformed_file(runner, malformed_path):
    result = runner.invoke(app, ["check", str(malformed_path)])
    assert result.exit_code == 64
    assert "line 4, field caps[0].center" in result.output


def test_check_missing_file(runner, tmp_path):
    result = runner.invoke(app, ["check", str(tmp_path / "absent.json")])
    assert result.exit_code == 64
    assert "error:" in result.output


def test_check_same_seed_prints_identical_verdicts(runner, antipodal_path, overlapping_chain_path):
    for path in (antipodal_path, overlapping_chain_path):
        args = ["check", str(path), "--no-overlap", "--seed", "7", "--jobs", "1"]
        first = runner.invoke(app, args)
        second = runner.invoke(app, args)
        assert first.exit_code == second.exit_code
        assert first.stdout == second.stdout
