"""Chain of Responsibility handlers for isoruled.

Encoders for configuration files, reports and residual tables all share one
handler interface, so commands can pick an encoding by name.
"""

from abc import ABC, abstractmethod
from enum import Enum
from typing import Any


class ChainType(Enum):
    """Categories of chain handlers.

    - ENCODING: serialization and deserialization (SerDe)
    """

    ENCODING = "encoding"


class ChainHandler(ABC):
    """Abstract base class for chain of responsibility handlers.

    Subclasses must implement:
        - chain_type: The type of chain this handler belongs to
        - handler_type: The specific handler identifier (e.g., "json", "csv")
        - handle(): Process the request
    """

    @property
    @abstractmethod
    def chain_type(self) -> ChainType:
        """Return the chain type this handler belongs to."""
        pass

    @property
    @abstractmethod
    def handler_type(self) -> str:
        """Return the handler type identifier."""
        pass

    @abstractmethod
    def handle(self, request: Any, **kwargs) -> Any:
        """Handle a request.

        Args:
            request: The request to handle
            **kwargs: Additional keyword arguments

        Returns:
            The result of handling the request
        """
        pass
