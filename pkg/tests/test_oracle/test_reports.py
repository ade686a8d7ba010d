import math

import numpy as np

from capcover.oracle import OracleReport
from capcover.oracle import OracleVerdict


def test_verdict_follows_witnesses():
    assert OracleReport.from_witnesses(checked=3, witnesses=[], max_violation=0.0).passed
    report = OracleReport.from_witnesses(checked=3, witnesses=[np.zeros(2)], max_violation=0.5, extra=1)
    assert report.verdict is OracleVerdict.failed
    assert report.details == {"extra": 1}


def test_to_dict_is_plain_data():
    report = OracleReport.from_witnesses(
        checked=2, witnesses=[np.array([1.0, 0.0])], max_violation=-math.inf, count=np.int64(4)
    )
    assert report.to_dict() == {
        "verdict": "fail",
        "checked": 2,
        "max_violation": None,
        "witnesses": [[1.0, 0.0]],
        "details": {"count": 4},
    }


def test_to_dict_drops_non_finite_details():
    report = OracleReport.from_witnesses(checked=0, witnesses=[], max_violation=0.0, rate=float("nan"))
    assert report.to_dict()["details"] == {"rate": None}
