"""Encodings used by isoruled: JSON for configurations and reports, CSV for residual tables.

JSON output is canonical: keys sorted, two-space indentation, numpy scalars
and arrays converted to plain numbers and lists, complex numbers written as
``[re, im]`` pairs. Two reports built from the same data therefore compare
equal byte for byte.
"""

import csv
import dataclasses
import io
import json
from typing import Any, Dict, List, Optional, Sequence, Type, TypeVar, Union

import numpy as np

from isoruled.errors import ConfigError
from isoruled.serde.base import SerDe

T = TypeVar("T")


class JSONSerDe(SerDe):
    """Canonical JSON with support for numpy values and complex numbers."""

    def __init__(self, indent: Optional[int] = 2):
        self.indent = indent

    @property
    def handler_type(self) -> str:
        return "json"

    def serialize(self, obj: Any) -> str:
        """Serialize with sorted keys.

        Args:
            obj: The Python object to serialize

        Returns:
            JSON string representation
        """
        return json.dumps(obj, default=self._default_serializer, sort_keys=True, indent=self.indent)

    def deserialize(self, data: Union[str, bytes], target_type: Optional[Type[T]] = None) -> T:
        """Parse JSON text.

        Raises:
            ConfigError: On malformed JSON, carrying the line of the syntax error
        """
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        try:
            return json.loads(data)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON: {e.msg}", line=e.lineno) from e

    def _default_serializer(self, obj: Any) -> Any:
        """Serializable representation of numpy values, complex numbers and dataclasses.

        Raises:
            TypeError: If object cannot be serialized
        """
        if isinstance(obj, complex):
            return [obj.real, obj.imag]
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.generic):
            return obj.item()
        if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            return dataclasses.asdict(obj)
        raise TypeError(f"Object of type {type(obj)} is not JSON serializable")


class CSVSerDe(SerDe):
    """Flat tables as CSV with a header row.

    Args:
        fieldnames: Column order; defaults to the keys of the first row
    """

    def __init__(self, fieldnames: Optional[Sequence[str]] = None):
        self.fieldnames = list(fieldnames) if fieldnames is not None else None

    @property
    def handler_type(self) -> str:
        return "csv"

    def serialize(self, obj: Any) -> str:
        """Write a list of dicts as CSV text with ``\\n`` line endings."""
        rows: List[Dict[str, Any]] = list(obj)
        fieldnames = self.fieldnames or (list(rows[0].keys()) if rows else [])
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        return buffer.getvalue()

    def deserialize(self, data: Union[str, bytes], target_type: Optional[Type[T]] = None) -> T:
        """Read CSV text back into a list of dicts of strings."""
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return list(csv.DictReader(io.StringIO(data)))  # type: ignore[return-value]
