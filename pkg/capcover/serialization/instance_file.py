import math
from typing import Any
from typing import Dict
from typing import List

import numpy as np

from capcover.core.exceptions import MalformedFileError
from capcover.core.exceptions import ValidationError
from capcover.serialization.files import FORMAT_VERSION
from capcover.serialization.files import PathLike
from capcover.serialization.files import atomic_write_text
from capcover.serialization.files import canonical_json_dumps
from capcover.serialization.files import locate_field
from capcover.serialization.files import parse_json
from capcover.serialization.files import pretty_json_dumps
from capcover.serialization.files import read_text
from capcover.serialization.files import sha256_hex
from capcover.sphere import EPS_UNIT
from capcover.sphere import HALF_PI
from capcover.sphere import Cap
from capcover.sphere import Instance

LOAD_NORM_TOLERANCE = 1e-6


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    """Plain-data view of an instance in the instance file schema."""
    return {
        "format_version": FORMAT_VERSION,
        "dim": instance.dim,
        "caps": [{"center": [float(x) for x in cap.center], "radius": float(cap.radius)} for cap in instance.caps],
    }


def instance_digest(instance: Instance) -> str:
    """SHA-256 of the canonical JSON of ``[dim, [[center, radius], ...]]``."""
    payload = [instance.dim, [[[float(x) for x in cap.center], float(cap.radius)] for cap in instance.caps]]
    return sha256_hex(canonical_json_dumps(payload))


def _number(value: Any, field: str, line) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedFileError(f"expected a number, got {type(value).__name__}", line=line, field=field)
    value = float(value)
    if not math.isfinite(value):
        raise MalformedFileError("expected a finite number", line=line, field=field)
    return value


def _center(raw: Any, dim: int, field: str, line) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != dim + 1:
        raise MalformedFileError(f"expected a list of {dim + 1} numbers", line=line, field=field)
    center = np.array([_number(value, f"{field}[{idx}]", line) for idx, value in enumerate(raw)])
    norm = float(np.linalg.norm(center))
    deviation = abs(norm - 1.0)
    if deviation > LOAD_NORM_TOLERANCE:
        raise MalformedFileError(f"center norm {norm!r} deviates from 1 by more than 1e-6", line=line, field=field)
    # centers within EPS_UNIT of the sphere are kept as stored
    return center if deviation <= EPS_UNIT else center / norm


def instance_from_dict(data: Any, text: str = "") -> Instance:
    """Validate plain data against the instance file schema and build the instance.

    Centers off the unit sphere by at most 1e-6 are normalized, larger deviations are rejected.

    Parameters
    ----------
    data:
        parsed JSON
    text:
        raw file text, used to locate offending fields

    Raises
    ------
    MalformedFileError:
        on any schema violation, with line and field of the offending value when known
    """
    if not isinstance(data, dict):
        raise MalformedFileError("top level should be a JSON object", line=1)
    for key in ("format_version", "dim", "caps"):
        if key not in data:
            raise MalformedFileError("missing field", field=key)
    version = data["format_version"]
    if version != FORMAT_VERSION:
        raise MalformedFileError(
            f"unsupported format version {version!r}", line=locate_field(text, "format_version"), field="format_version"
        )
    dim = data["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise MalformedFileError("expected an integer >= 1", line=locate_field(text, "dim"), field="dim")
    raw_caps = data["caps"]
    if not isinstance(raw_caps, list) or not raw_caps:
        raise MalformedFileError("expected a nonempty list of caps", line=locate_field(text, "caps"), field="caps")

    caps: List[Cap] = []
    for idx, raw in enumerate(raw_caps):
        field = f"caps[{idx}]"
        if not isinstance(raw, dict) or "center" not in raw or "radius" not in raw:
            raise MalformedFileError("expected an object with center and radius", field=field)
        center = _center(raw["center"], dim, f"{field}.center", locate_field(text, "center", idx))
        radius_line = locate_field(text, "radius", idx)
        radius = _number(raw["radius"], f"{field}.radius", radius_line)
        if not 0.0 < radius < HALF_PI:
            raise MalformedFileError(
                f"radius {radius!r} should lie in (0, pi/2)", line=radius_line, field=f"{field}.radius"
            )
        try:
            caps.append(Cap(center=center, radius=radius))
        except ValidationError as e:
            raise MalformedFileError(str(e), field=field) from e
    return Instance(dim=dim, caps=tuple(caps))


def save_instance(instance: Instance, path: PathLike):
    """Write the instance file atomically."""
    atomic_write_text(path, pretty_json_dumps(instance_to_dict(instance)))


def load_instance(path: PathLike) -> Instance:
    """Read and validate an instance file.

    Raises
    ------
    MalformedFileError:
        if the file is not valid JSON or violates the schema
    """
    text = read_text(path)
    return instance_from_dict(parse_json(text), text)


__all__ = [
    "LOAD_NORM_TOLERANCE",
    "instance_to_dict",
    "instance_from_dict",
    "instance_digest",
    "save_instance",
    "load_instance",
]
