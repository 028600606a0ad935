"""Tests for the JSON and CSV encodings."""

import json
from dataclasses import dataclass

import numpy as np
import pytest

from isoruled.chain import ChainType
from isoruled.errors import ConfigError
from isoruled.serde import CSVSerDe, JSONSerDe, SerDe


@dataclass
class Sample:
    z: complex
    t: tuple


class TestSerDeInterface:
    """Tests for the SerDe base interface."""

    def test_serde_is_abstract(self):
        """Test that SerDe cannot be instantiated directly."""
        with pytest.raises(TypeError):
            SerDe()  # type: ignore[abstract]

    def test_handler_types(self):
        assert JSONSerDe().handler_type == "json"
        assert CSVSerDe().handler_type == "csv"
        assert JSONSerDe().chain_type == ChainType.ENCODING

    def test_handle_requests(self):
        """Action tuples and bare objects are accepted."""
        serde = JSONSerDe(indent=None)
        assert serde.handle(("serialize", {"a": 1})) == '{"a": 1}'
        assert serde.handle(("deserialize", '{"a": 1}')) == {"a": 1}
        assert serde.handle(("deserialize", "[1, 2]", list)) == [1, 2]
        assert serde.handle({"action": "serialize"}) == '{"action": "serialize"}'
        assert serde.handle([1, 2]) == "[1, 2]"


class TestJSONSerDe:
    """Canonical JSON output."""

    def test_sorted_keys(self):
        text = JSONSerDe().serialize({"b": 1, "a": 2})
        assert text == '{\n  "a": 2,\n  "b": 1\n}'

    def test_numpy_and_complex(self):
        data = {"v": np.array([1.0, 2.0]), "k": np.float64(0.5), "z": 1 - 2j}
        assert json.loads(JSONSerDe().serialize(data)) == {
            "v": [1.0, 2.0],
            "k": 0.5,
            "z": [1.0, -2.0],
        }

    def test_dataclass(self):
        text = JSONSerDe(indent=None).serialize(Sample(0.5j, (1.0,)))
        assert json.loads(text) == {"z": [0.0, 0.5], "t": [1.0]}

    def test_unsupported_type(self):
        with pytest.raises(TypeError):
            JSONSerDe().serialize({"x": object()})

    def test_bytes_input(self):
        assert JSONSerDe().deserialize(b'{"key": "value"}') == {"key": "value"}

    def test_syntax_error_carries_line(self):
        with pytest.raises(ConfigError) as info:
            JSONSerDe().deserialize('{\n  "name": "seed-a",\n  oops\n}')
        assert info.value.line == 3


class TestCSVSerDe:
    """Flat residual tables."""

    def test_column_order(self):
        rows = [{"b": 1, "a": 2}, {"b": 3, "a": 4}]
        assert CSVSerDe(["a", "b"]).serialize(rows) == "a,b\n2,1\n4,3\n"

    def test_default_columns(self):
        assert CSVSerDe().serialize([{"x": 1}]) == "x\n1\n"
        assert CSVSerDe().serialize([]) == "\n"

    def test_read_back(self):
        rows = CSVSerDe().deserialize("name,max\nricci,1e-10\n")
        assert rows == [{"name": "ricci", "max": "1e-10"}]
