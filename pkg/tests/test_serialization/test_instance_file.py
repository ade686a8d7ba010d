import json
import math

import numpy as np
import pytest

from capcover.core.exceptions import MalformedFileError
from capcover.serialization import instance_digest
from capcover.serialization import instance_from_dict
from capcover.serialization import instance_to_dict
from capcover.serialization import load_instance
from capcover.serialization import save_instance
from capcover.sphere import Cap
from capcover.sphere import Instance


def _write(path, payload) -> str:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    path.write_text(text)
    return str(path)


def test_save_and_load_preserve_bits(tmp_path, tangent_chain_instance):
    path = tmp_path / "chain.json"
    save_instance(tangent_chain_instance, path)
    assert load_instance(path) == tangent_chain_instance
    assert path.read_text().endswith("\n")
    assert not [item.name for item in tmp_path.iterdir() if item.name.endswith(".tmp")]


def test_to_dict_layout(single_cap_instance):
    assert instance_to_dict(single_cap_instance) == {
        "format_version": 1,
        "dim": 2,
        "caps": [{"center": [1.0, 0.0, 0.0], "radius": math.pi / 6}],
    }


def test_near_unit_centers_normalized():
    data = {"format_version": 1, "dim": 1, "caps": [{"center": [1.0 + 5e-7, 0.0], "radius": 0.2}]}
    instance = instance_from_dict(data)
    np.testing.assert_allclose(instance.caps[0].center, [1.0, 0.0])


def test_digest_depends_on_every_bit(single_cap_instance):
    shifted = Instance(dim=2, caps=(Cap([1.0, 0.0, 0.0], np.nextafter(math.pi / 6, 1.0)),))
    assert instance_digest(single_cap_instance) != instance_digest(shifted)
    reloaded = instance_from_dict(instance_to_dict(single_cap_instance))
    assert instance_digest(single_cap_instance) == instance_digest(reloaded)


@pytest.mark.parametrize(
    "payload, field",
    [
        ({"dim": 2, "caps": []}, "format_version"),
        ({"format_version": 2, "dim": 2, "caps": []}, "format_version"),
        ({"format_version": 1, "dim": 0, "caps": []}, "dim"),
        ({"format_version": 1, "dim": 2, "caps": []}, "caps"),
        ({"format_version": 1, "dim": 2, "caps": [{"center": [1.0, 0.0, 0.0]}]}, "caps[0]"),
        ({"format_version": 1, "dim": 2, "caps": [{"center": [1.0, 0.0], "radius": 0.1}]}, "caps[0].center"),
        ({"format_version": 1, "dim": 2, "caps": [{"center": [2.0, 0.0, 0.0], "radius": 0.1}]}, "caps[0].center"),
        ({"format_version": 1, "dim": 2, "caps": [{"center": [1.0, 0.0, 0.0], "radius": 2.0}]}, "caps[0].radius"),
        ({"format_version": 1, "dim": 2, "caps": [{"center": [1.0, 0.0, 0.0], "radius": "a"}]}, "caps[0].radius"),
    ],
)
def test_schema_violations(tmp_path, payload, field):
    with pytest.raises(MalformedFileError) as error:
        load_instance(_write(tmp_path / "bad.json", payload))
    assert error.value.field == field


def test_line_of_offending_field(tmp_path):
    payload = {"format_version": 1, "dim": 2, "caps": [{"center": [1.0, 0.0, 0.0], "radius": 3.0}]}
    with pytest.raises(MalformedFileError, match="line"):
        load_instance(_write(tmp_path / "bad.json", payload))


def test_invalid_json(tmp_path):
    with pytest.raises(MalformedFileError, match="invalid JSON") as error:
        load_instance(_write(tmp_path / "bad.json", '{\n  "dim": 2,\n  oops\n}'))
    assert error.value.line == 3


def test_top_level_must_be_object(tmp_path):
    with pytest.raises(MalformedFileError, match="top level"):
        load_instance(_write(tmp_path / "bad.json", "[1, 2]"))
