import json

import pytest
from hypothesis import given, strategies as st

from support import FIXTURES
from ecrho.instances import InstanceSpec, load_records

ints = st.integers(0, 10**6)


@given(ints, ints, ints, ints, ints, ints, ints, st.none() | ints)
def test_serialize_roundtrip(p, a, b, px, py, qx, qy, n):
    spec = InstanceSpec(p, a, b, px, py, qx, qy, n)
    text = spec.to_json()
    assert InstanceSpec.from_json(text).to_json() == text
    assert list(json.loads(text))[:7] == ["p", "a", "b", "px", "py", "qx", "qy"]


def test_fixture_files_are_canonical():
    for name in ("example1.json", "example2.json"):
        text = (FIXTURES / name).read_text().strip()
        assert InstanceSpec.from_json(text).to_json() == text


def test_context_computes_missing_order():
    spec = InstanceSpec(719, 130, 565, 312, 90, 475, 662)
    assert spec.context().n == 233
    assert "n" not in spec.to_dict()


def test_from_context(ex2):
    assert InstanceSpec.from_context(ex2) == InstanceSpec(1009, 250, 844, 909, 601, 134, 52, 1007)


@pytest.mark.parametrize("record, message", [
    ({"p": 719, "a": 130}, "missing"),
    ({"p": 719, "a": 130, "b": 565, "px": 312, "py": 90, "qx": 475, "qy": "662"}, "integer"),
    ({"p": 719, "a": 130, "b": 565, "px": 312, "py": 90, "qx": 475, "qy": True}, "integer"),
])
def test_bad_records(record, message):
    with pytest.raises(ValueError, match=message):
        InstanceSpec.from_dict(record)


def test_invalid_instances_fail_validation():
    with pytest.raises(ValueError):
        InstanceSpec(719, 130, 565, 312, 91, 475, 662).context()
    with pytest.raises(ValueError):
        InstanceSpec(719, 130, 565, 312, 90, 475, 662, 234).context()


def test_load_records(tmp_path):
    assert len(load_records(FIXTURES / "examples_bench.json")) == 2
    assert len(load_records(FIXTURES / "example1.json")) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    with pytest.raises(ValueError):
        load_records(bad)
