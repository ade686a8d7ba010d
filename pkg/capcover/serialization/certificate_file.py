import math
from typing import Any
from typing import Dict
from typing import Optional

import numpy as np

from capcover import __version__
from capcover.core.exceptions import MalformedFileError
from capcover.core.exceptions import ValidationError
from capcover.cover import CoverCertificate
from capcover.cover import MergeStep
from capcover.separability import SeparabilityStatus
from capcover.separability import SeparabilityVerdict
from capcover.separability import SignPattern
from capcover.serialization.files import FORMAT_VERSION
from capcover.serialization.files import PathLike
from capcover.serialization.files import atomic_write_text
from capcover.serialization.files import finite_or_none
from capcover.serialization.files import locate_field
from capcover.serialization.files import parse_json
from capcover.serialization.files import pretty_json_dumps
from capcover.serialization.files import read_text
from capcover.serialization.instance_file import instance_digest
from capcover.sphere import Cap
from capcover.sphere import Instance
from capcover.sphere import Zone

_REQUIRED_FIELDS = (
    "format_version",
    "tool_version",
    "seed",
    "instance_digest",
    "cover",
    "slacks",
    "valid",
    "heuristic_signing",
    "tight_half_width",
    "initial_w_norm",
    "final_w",
    "separability",
    "merge_trace",
)


def _floats(values) -> list:
    return [float(value) for value in values]


def verdict_to_dict(verdict: SeparabilityVerdict) -> Dict[str, Any]:
    """Plain-data view of a separability verdict."""
    return {
        "status": verdict.status.value,
        "method": verdict.method,
        "patterns_checked": verdict.patterns_checked,
        "best_margin": finite_or_none(verdict.best_margin),
        "witness_normal": None if verdict.witness_normal is None else _floats(verdict.witness_normal),
        "witness_pattern": None if verdict.witness_pattern is None else list(verdict.witness_pattern.signs),
    }


def _step_to_dict(step: MergeStep) -> Dict[str, Any]:
    return {
        "merged_indices": list(step.merged_indices),
        "source_indices": list(step.source_indices),
        "normal": _floats(step.new_zone.normal),
        "half_width": float(step.new_zone.half_width),
        "norm_slack": float(step.norm_slack),
        "member_slacks": _floats(step.member_slacks),
        "w_norm_before": finite_or_none(step.w_norm_before),
    }


def certificate_to_dict(certificate: CoverCertificate, seed: Optional[int] = None) -> Dict[str, Any]:
    """Plain-data view of a certificate in the certificate file schema.

    Input caps are not stored, the certificate binds to its instance through ``instance_digest``.
    """
    return {
        "format_version": FORMAT_VERSION,
        "tool_version": __version__,
        "seed": seed,
        "instance_digest": instance_digest(certificate.instance),
        "cover": {"center": _floats(certificate.cover_cap.center), "radius": float(certificate.cover_cap.radius)},
        "slacks": _floats(certificate.containment_slacks),
        "valid": bool(certificate.valid),
        "heuristic_signing": bool(certificate.heuristic_signing),
        "tight_half_width": float(certificate.tight_half_width),
        "initial_w_norm": float(certificate.initial_w_norm),
        "final_w": _floats(certificate.final_w),
        "separability": verdict_to_dict(certificate.separability),
        "merge_trace": [_step_to_dict(step) for step in certificate.merge_trace],
    }


def _field(data: Dict[str, Any], key: str, text: str, kind, occurrence: int = 0):
    value = data.get(key)
    if not isinstance(value, kind) or (kind is not bool and isinstance(value, bool)):
        raise MalformedFileError(
            f"expected {getattr(kind, '__name__', 'value')}", line=locate_field(text, key, occurrence), field=key
        )
    return value


def _optional_float(value: Any, default: float) -> float:
    return default if value is None else float(value)


def _verdict_from_dict(data: Any, text: str) -> SeparabilityVerdict:
    if not isinstance(data, dict):
        raise MalformedFileError("expected an object", line=locate_field(text, "separability"), field="separability")
    try:
        status = SeparabilityStatus(data.get("status"))
    except ValueError as e:
        raise MalformedFileError(
            f"unknown status {data.get('status')!r}", line=locate_field(text, "status"), field="separability.status"
        ) from e
    witness_normal = data.get("witness_normal")
    witness_pattern = data.get("witness_pattern")
    return SeparabilityVerdict(
        status=status,
        witness_normal=None if witness_normal is None else np.array(witness_normal, dtype=float),
        witness_pattern=None if witness_pattern is None else SignPattern(tuple(int(s) for s in witness_pattern)),
        best_margin=_optional_float(data.get("best_margin"), -math.inf),
        method=str(data.get("method", "solver")),
        patterns_checked=int(data.get("patterns_checked", 0)),
    )


def _step_from_dict(data: Any, idx: int, text: str) -> MergeStep:
    field = f"merge_trace[{idx}]"
    try:
        return MergeStep(
            merged_indices=tuple(int(value) for value in data["merged_indices"]),
            source_indices=tuple(int(value) for value in data["source_indices"]),
            new_zone=Zone(normal=np.array(data["normal"], dtype=float), half_width=float(data["half_width"])),
            norm_slack=float(data["norm_slack"]),
            member_slacks=tuple(float(value) for value in data["member_slacks"]),
            w_norm_before=_optional_float(data.get("w_norm_before"), math.nan),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedFileError(
            f"bad merge step: {e}", line=locate_field(text, "merged_indices", idx), field=field
        ) from e


def certificate_from_dict(data: Any, instance: Instance, text: str = "") -> CoverCertificate:
    """Rebuild a certificate from plain data and the instance it was computed for.

    Raises
    ------
    MalformedFileError:
        on schema violations or when the instance digest does not match ``instance``
    """
    if not isinstance(data, dict):
        raise MalformedFileError("top level should be a JSON object", line=1)
    for key in _REQUIRED_FIELDS:
        if key not in data:
            raise MalformedFileError("missing field", field=key)
    if data["format_version"] != FORMAT_VERSION:
        raise MalformedFileError(
            f"unsupported format version {data['format_version']!r}",
            line=locate_field(text, "format_version"),
            field="format_version",
        )
    digest = _field(data, "instance_digest", text, str)
    if digest != instance_digest(instance):
        raise MalformedFileError(
            "certificate was computed for another instance",
            line=locate_field(text, "instance_digest"),
            field="instance_digest",
        )

    cover = _field(data, "cover", text, dict)
    slacks = _field(data, "slacks", text, list)
    trace = _field(data, "merge_trace", text, list)
    if len(slacks) != instance.n:
        raise MalformedFileError(
            f"expected {instance.n} slacks, got {len(slacks)}", line=locate_field(text, "slacks"), field="slacks"
        )
    try:
        cover_cap = Cap(center=np.array(cover["center"], dtype=float), radius=float(cover["radius"]))
        final_w = np.array(_field(data, "final_w", text, list), dtype=float)
        containment_slacks = np.array(slacks, dtype=float)
    except (KeyError, TypeError, ValueError, ValidationError) as e:
        raise MalformedFileError(f"bad cover: {e}", line=locate_field(text, "cover"), field="cover") from e

    return CoverCertificate(
        cover_cap=cover_cap,
        input_caps=instance.caps,
        containment_slacks=containment_slacks,
        merge_trace=tuple(_step_from_dict(step, idx, text) for idx, step in enumerate(trace)),
        final_w=final_w,
        heuristic_signing=_field(data, "heuristic_signing", text, bool),
        separability=_verdict_from_dict(data["separability"], text),
        valid=_field(data, "valid", text, bool),
        tight_half_width=float(_field(data, "tight_half_width", text, (int, float))),
        initial_w_norm=float(_field(data, "initial_w_norm", text, (int, float))),
    )


def save_certificate(certificate: CoverCertificate, path: PathLike, seed: Optional[int] = None):
    """Write the certificate file atomically."""
    atomic_write_text(path, pretty_json_dumps(certificate_to_dict(certificate, seed=seed)))


def load_certificate(path: PathLike, instance: Instance) -> CoverCertificate:
    """Read a certificate file and bind it to ``instance``.

    Raises
    ------
    MalformedFileError:
        if the file is malformed or the digest does not match
    """
    text = read_text(path)
    return certificate_from_dict(parse_json(text), instance, text)


def read_certificate_seed(path: PathLike) -> Optional[int]:
    """Seed stored in a certificate file, None if absent."""
    data = parse_json(read_text(path))
    seed = data.get("seed") if isinstance(data, dict) else None
    return seed if isinstance(seed, int) and not isinstance(seed, bool) else None


__all__ = [
    "certificate_to_dict",
    "verdict_to_dict",
    "certificate_from_dict",
    "save_certificate",
    "load_certificate",
    "read_certificate_seed",
]
