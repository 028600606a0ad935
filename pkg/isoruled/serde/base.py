"""Encodings as ENCODING chain handlers.

Run configurations are read through a SerDe; reports and residual tables are
written through one.
"""

from abc import abstractmethod
from typing import Any, Optional, Type, TypeVar, Union

from isoruled.chain import ChainHandler, ChainType

T = TypeVar("T")


class SerDe(ChainHandler):
    """Text encoding of plain Python values.

    Subclasses name their encoding in ``handler_type`` and implement
    serialize() and deserialize().

    Example:
        >>> from isoruled.serde import JSONSerDe
        >>> JSONSerDe().handle(("serialize", {"b": 1, "a": 2}))
        '{\\n  "a": 2,\\n  "b": 1\\n}'
    """

    @property
    def chain_type(self) -> ChainType:
        return ChainType.ENCODING

    def handle(self, request: Any, **kwargs) -> Any:
        """Dispatch ``("serialize", obj)`` or ``("deserialize", text[, type])``.

        Any other request is serialized as is.
        """
        if isinstance(request, tuple) and len(request) >= 2:
            action, payload, *rest = request
            if action == "deserialize":
                return self.deserialize(payload, rest[0] if rest else None)
            if action == "serialize":
                return self.serialize(payload)
        return self.serialize(request)

    @abstractmethod
    def serialize(self, obj: Any) -> str:
        pass

    @abstractmethod
    def deserialize(self, data: Union[str, bytes], target_type: Optional[Type[T]] = None) -> T:
        """Decode ``data``; ``target_type`` is a hint for encodings that can use one."""
        pass
