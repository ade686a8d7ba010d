import math
from typing import TYPE_CHECKING
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from capcover.core.exceptions import ValidationError
from capcover.sphere import Cap
from capcover.sphere import Instance
from capcover.sphere import normalize

if TYPE_CHECKING:
    from capcover.cover import CoverCertificate

PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22")
BOUNDARY_POINTS = 240

Point2D = Tuple[float, float]


def _fmt(value: float) -> str:
    text = "%.5f" % value
    # negative zero
    return "0.00000" if text == "-0.00000" else text


class SvgCanvas:
    """Minimal SVG 1.1 writer; every coordinate is written with five decimals."""

    def __init__(self, width: float, height: float):
        self.width = width
        self.height = height
        self.elements: List[str] = []

    def circle(self, center: Point2D, radius: float, stroke: str = "#000000", fill: str = "none", width: float = 1.0):
        """Add a circle."""
        self.elements.append(
            f'<circle cx="{_fmt(center[0])}" cy="{_fmt(center[1])}" r="{_fmt(radius)}" '
            f'style="fill:{fill};stroke:{stroke};stroke-width:{_fmt(width)}"/>'
        )

    def polyline(self, points: Sequence[Point2D], stroke: str = "#000000", width: float = 1.0, dashed: bool = False):
        """Add an open polyline."""
        dash = ";stroke-dasharray:6,4" if dashed else ""
        self.elements.append(
            f'<polyline points="{self._points(points)}" '
            f'style="fill:none;stroke:{stroke};stroke-width:{_fmt(width)}{dash}"/>'
        )

    def polygon(self, points: Sequence[Point2D], stroke: str, fill: str, opacity: float = 0.35, dashed: bool = False):
        """Add a closed polygon."""
        dash = ";stroke-dasharray:6,4" if dashed else ""
        self.elements.append(
            f'<polygon points="{self._points(points)}" '
            f'style="fill:{fill};fill-opacity:{_fmt(opacity)};stroke:{stroke};stroke-width:1.00000{dash}"/>'
        )

    def text(self, position: Point2D, content: str, size: int = 14):
        """Add a text label."""
        self.elements.append(
            f'<text x="{_fmt(position[0])}" y="{_fmt(position[1])}" font-family="sans-serif" '
            f'font-size="{size}">{content}</text>'
        )

    @staticmethod
    def _points(points: Sequence[Point2D]) -> str:
        return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)

    def to_string(self) -> str:
        """Render the document."""
        header = (
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(self.width)}" '
            f'height="{_fmt(self.height)}" viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}">\n'
            f'<rect x="0" y="0" width="{_fmt(self.width)}" height="{_fmt(self.height)}" style="fill:#ffffff"/>\n'
        )
        return header + "".join(element + "\n" for element in self.elements) + "</svg>\n"


class _OrthographicPanel:
    """Orthographic view of S^2 from direction ``view`` drawn in a disk of radius ``scale`` at ``origin``."""

    def __init__(self, view: np.ndarray, origin: Point2D, scale: float):
        self.view = view
        self.origin = origin
        self.scale = scale
        helper = np.eye(3)[int(np.argmin(np.abs(view)))]
        self.right = normalize(helper - (helper @ view) * view)
        self.up = np.cross(view, self.right)

    def project(self, point: np.ndarray) -> Point2D:
        return (
            self.origin[0] + self.scale * float(point @ self.right),
            self.origin[1] - self.scale * float(point @ self.up),
        )

    def visible_runs(self, points: np.ndarray) -> List[List[Point2D]]:
        """Split a closed curve into runs of points on the visible hemisphere."""
        visible = points @ self.view >= 0
        if visible.all():
            return [[self.project(point) for point in points]]
        if not visible.any():
            return []
        # start at a hidden point
        start = int(np.argmin(visible))
        points = np.roll(points, -start, axis=0)
        visible = np.roll(visible, -start)
        runs: List[List[Point2D]] = []
        current: List[Point2D] = []
        for point, flag in zip(points, visible):
            if flag:
                current.append(self.project(point))
            elif current:
                runs.append(current)
                current = []
        if current:
            runs.append(current)
        return runs


def _circle_points(axis: np.ndarray, angle: float, count: int = BOUNDARY_POINTS) -> np.ndarray:
    """Points of the small circle at spherical distance ``angle`` from ``axis``."""
    helper = np.eye(3)[int(np.argmin(np.abs(axis)))]
    first = normalize(helper - (helper @ axis) * axis)
    second = np.cross(axis, first)
    thetas = np.linspace(0.0, 2 * math.pi, count, endpoint=False)
    ring = np.cos(thetas)[:, None] * first[None, :] + np.sin(thetas)[:, None] * second[None, :]
    return math.cos(angle) * axis[None, :] + math.sin(angle) * ring


def _draw_cap(canvas: SvgCanvas, panel: _OrthographicPanel, cap: Cap, color: str, dashed: bool = False):
    runs = panel.visible_runs(_circle_points(cap.center, cap.radius))
    fully_visible = len(runs) == 1 and len(runs[0]) == BOUNDARY_POINTS
    if fully_visible and not dashed:
        canvas.polygon(runs[0], stroke=color, fill=color)
        return
    for run in runs:
        closed = run + [run[0]] if fully_visible else run
        canvas.polyline(closed, stroke=color, width=2.0 if dashed else 1.0, dashed=dashed)


def plot_instance(
    instance: Instance,
    certificate: Optional["CoverCertificate"] = None,
    witness_normal: Optional[np.ndarray] = None,
    panel_size: float = 360.0,
) -> str:
    """Draw a family of caps on S^2 as two orthographic views from ``+v`` and ``-v``.

    ``v`` is the cover center of ``certificate`` if given, else ``e_3``. Input caps are drawn filled when fully
    visible and as boundary arcs otherwise, the cover cap boundary is dashed and the great circle orthogonal to
    ``witness_normal`` (a separating normal) is drawn in black.

    Returns
    -------
    :
        SVG document; identical inputs give identical bytes

    Raises
    ------
    ValidationError:
        if the instance does not live on S^2
    """
    if instance.dim != 2:
        raise ValidationError(f"Plots are available for S^2 only, instance is on S^{instance.dim}")
    view = np.array([0.0, 0.0, 1.0]) if certificate is None else np.asarray(certificate.cover_cap.center, dtype=float)
    margin = 20.0
    radius = panel_size / 2 - margin
    canvas = SvgCanvas(width=2 * panel_size, height=panel_size + 30.0)
    panels = [
        (_OrthographicPanel(view, (panel_size / 2, panel_size / 2 + 30.0), radius), "view from +v"),
        (_OrthographicPanel(-view, (1.5 * panel_size, panel_size / 2 + 30.0), radius), "view from -v"),
    ]
    for panel, label in panels:
        canvas.circle(panel.origin, radius, stroke="#000000")
        canvas.text((panel.origin[0] - radius, 20.0), label)
        for idx, cap in enumerate(instance.caps):
            _draw_cap(canvas, panel, cap, PALETTE[idx % len(PALETTE)])
        if certificate is not None:
            _draw_cap(canvas, panel, certificate.cover_cap, "#000000", dashed=True)
        if witness_normal is not None:
            normal = normalize(witness_normal, name="witness normal")
            for run in panel.visible_runs(_circle_points(normal, math.pi / 2)):
                canvas.polyline(run, stroke="#000000", width=1.5)
    return canvas.to_string()


__all__ = ["SvgCanvas", "plot_instance"]
