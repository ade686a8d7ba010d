import math

import numpy as np
import pytest

from capcover.core.exceptions import ValidationError
from capcover.oracle import eq2_harness
from capcover.oracle import lemma7_harness


def test_bang_cell_property_holds():
    report = lemma7_harness(families=30, samples_per_family=40, seed=0)
    assert report.passed
    assert report.checked == 30 * 40
    assert report.details["premise_hits"] > 0


def test_broken_cell_predicate_is_caught():
    def never_in_cell(ts, pattern, vectors):
        return np.zeros(len(ts), dtype=bool)

    report = lemma7_harness(families=10, samples_per_family=40, seed=0, cell_predicate=never_in_cell)
    assert not report.passed
    assert report.witnesses[0]["t"].shape == (3,)


def test_bang_cell_property_in_higher_dimension():
    assert lemma7_harness(families=10, samples_per_family=40, seed=1, dim=3, max_caps=4).passed


@pytest.mark.parametrize("max_caps", [0, 7])
def test_lemma7_rejects_family_size(max_caps):
    with pytest.raises(ValidationError, match="max_caps"):
        lemma7_harness(families=1, max_caps=max_caps)


def test_eq2_implication_holds():
    report = eq2_harness(families=10, samples_per_family=300, seed=0)
    assert report.passed
    assert report.checked == 3000
    rate = report.details["converse_rate"]
    assert math.isnan(rate) or 0.0 <= rate <= 1.0


def test_eq2_rejects_budget():
    with pytest.raises(ValidationError, match="positive"):
        eq2_harness(families=0)


def test_report_serializes_witnesses():
    def never_in_cell(ts, pattern, vectors):
        return np.zeros(len(ts), dtype=bool)

    report = lemma7_harness(families=3, samples_per_family=20, seed=0, cell_predicate=never_in_cell)
    payload = report.to_dict()
    assert payload["verdict"] == "fail"
    assert isinstance(payload["witnesses"][0]["t"], list)
    assert isinstance(payload["witnesses"][0]["vectors"][0], list)
