"""SerDe (Serialize/Deserialize) handlers for the ENCODING chain.

Architecture:
    - SerDe: Base abstract class extending ChainHandler for the ENCODING chain type
    - JSONSerDe: canonical JSON for run configurations and verification reports
    - CSVSerDe: flat residual tables

Usage:
    >>> from isoruled.serde import JSONSerDe
    >>> JSONSerDe(indent=None).serialize({"z": 1j, "a": 1})
    '{"a": 1, "z": [0.0, 1.0]}'
"""

from isoruled.serde.base import SerDe
from isoruled.serde.encodings import CSVSerDe, JSONSerDe

__all__ = ["SerDe", "JSONSerDe", "CSVSerDe"]
