import hashlib
import json
import math
import os
import re
import tempfile
from pathlib import Path
from typing import Any
from typing import Optional
from typing import Union

from capcover.core.exceptions import MalformedFileError

PathLike = Union[str, Path]

FORMAT_VERSION = 1


def canonical_json_dumps(obj: Any) -> str:
    """Compact JSON with sorted keys; floats use the shortest repr that reads back bit-exact."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def pretty_json_dumps(obj: Any) -> str:
    """Indented JSON with a trailing newline, the layout of files written by capcover."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def sha256_hex(text: str) -> str:
    """SHA-256 digest of utf-8 encoded text."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def finite_or_none(value: float) -> Optional[float]:
    """Float for JSON: non-finite values become null."""
    value = float(value)
    return value if math.isfinite(value) else None


def atomic_write_text(path: PathLike, text: str):
    """Write text to a temporary file next to ``path`` and rename it over ``path``."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as file:
            file.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def locate_field(text: str, key: str, occurrence: int = 0) -> Optional[int]:
    """Return the 1-based line of the ``occurrence``-th ``"key":`` token in JSON text."""
    pattern = re.compile(r'"' + re.escape(key) + r'"\s*:')
    for idx, match in enumerate(pattern.finditer(text)):
        if idx == occurrence:
            return text.count("\n", 0, match.start()) + 1
    return None


def parse_json(text: str) -> Any:
    """Parse JSON text, syntax errors become ``MalformedFileError`` with the offending line."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedFileError(f"invalid JSON: {e.msg}", line=e.lineno) from e


def read_text(path: PathLike) -> str:
    """Read a utf-8 file, decoding errors become ``MalformedFileError``."""
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise MalformedFileError(f"file is not utf-8 text: {e.reason}") from e


__all__ = [
    "FORMAT_VERSION",
    "canonical_json_dumps",
    "pretty_json_dumps",
    "sha256_hex",
    "finite_or_none",
    "atomic_write_text",
    "locate_field",
    "parse_json",
    "read_text",
]
