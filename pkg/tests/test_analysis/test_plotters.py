import hashlib
import math
import os
import re
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from capcover.analysis import SvgCanvas
from capcover.analysis import plot_instance
from capcover.bang import MaxNormSigner
from capcover.core.exceptions import ValidationError
from capcover.cover import CoverOptions
from capcover.cover import cover_caps
from capcover.datasets import gen_chain


def test_plot_is_deterministic(tangent_chain_instance):
    first = plot_instance(tangent_chain_instance)
    assert first == plot_instance(tangent_chain_instance)
    assert first.startswith("<?xml")
    assert first.rstrip().endswith("</svg>")
    assert "view from +v" in first and "view from -v" in first


def test_plot_with_certificate_draws_dashed_cover(tangent_chain_instance):
    certificate = cover_caps(tangent_chain_instance, CoverOptions(n_jobs=1))
    svg = plot_instance(tangent_chain_instance, certificate=certificate)
    assert "stroke-dasharray" in svg
    assert "stroke-dasharray" not in plot_instance(tangent_chain_instance)


def test_visible_caps_are_filled(antipodal_instance):
    svg = plot_instance(antipodal_instance)
    assert svg.count("<polygon") == 2


def test_witness_great_circle(antipodal_instance):
    plain = plot_instance(antipodal_instance)
    with_witness = plot_instance(antipodal_instance, witness_normal=np.array([0.0, 0.0, 1.0]))
    assert with_witness.count("<polyline") > plain.count("<polyline")


def test_plot_rejects_other_dimensions():
    with pytest.raises(ValidationError, match="S\\^2 only"):
        plot_instance(gen_chain(3, 2, 0.1))


def test_canvas_formatting():
    canvas = SvgCanvas(10, 20)
    canvas.circle((-0.000001, 1.0), 2.0)
    text = canvas.to_string()
    assert 'cx="0.00000"' in text
    assert 'width="10.00000"' in text


PANEL_ORIGIN = (180.0, 210.0)
PANEL_SCALE = 140.0

TANGENT_CHAIN_PLOT = """
import hashlib, math
from capcover.analysis import plot_instance
from capcover.bang import MaxNormSigner
from capcover.cover import CoverOptions, cover_caps
from capcover.datasets import gen_chain
chain = gen_chain(2, 3, math.pi / 12, 0.0, seed=0)
certificate = cover_caps(chain, CoverOptions(signer=MaxNormSigner(exact_threshold=24, seed=0), n_jobs=1))
print(hashlib.sha256(plot_instance(chain, certificate=certificate).encode()).hexdigest())
"""


@pytest.fixture
def tangent_chain_svg():
    chain = gen_chain(2, 3, math.pi / 12, 0.0, seed=0)
    options = CoverOptions(signer=MaxNormSigner(exact_threshold=24, seed=0), n_jobs=1)
    certificate = cover_caps(chain, options)
    return chain, certificate, plot_instance(chain, certificate=certificate)


def _radii_from_origin(points_attr: str) -> np.ndarray:
    points = np.array([[float(x) for x in pair.split(",")] for pair in points_attr.split()])
    return np.hypot(points[:, 0] - PANEL_ORIGIN[0], points[:, 1] - PANEL_ORIGIN[1])


def test_tangent_chain_plot_hash_is_stable_across_processes(tangent_chain_svg):
    _, _, svg = tangent_chain_svg
    digest = hashlib.sha256(svg.encode()).hexdigest()
    root = Path(__file__).resolve().parents[2]
    for hash_seed in ("0", "1"):
        result = subprocess.run(
            [sys.executable, "-c", TANGENT_CHAIN_PLOT],
            cwd=root,
            env={**os.environ, "PYTHONHASHSEED": hash_seed},
            capture_output=True,
            text=True,
            check=True,
        )
        assert result.stdout.strip() == digest


def test_tangent_chain_cover_circle_touches_end_caps(tangent_chain_svg):
    chain, certificate, svg = tangent_chain_svg
    assert certificate.cover_cap.radius == chain.sum_radii
    expected = PANEL_SCALE * math.sin(chain.sum_radii)

    dashed = re.findall(r'<polyline points="([^"]+)" style="[^"]*stroke-dasharray', svg)
    assert len(dashed) == 1
    np.testing.assert_allclose(_radii_from_origin(dashed[0]), expected, atol=1e-4)

    caps = re.findall(r'<polygon points="([^"]+)"', svg)
    assert len(caps) == 3
    first, middle, last = (_radii_from_origin(points).max() for points in caps)
    assert first == pytest.approx(expected, abs=5e-3)
    assert last == pytest.approx(expected, abs=5e-3)
    assert middle < expected - 10.0
    assert first <= expected + 1e-4 and last <= expected + 1e-4
