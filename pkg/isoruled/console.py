"""Console output for commands.

Architecture:
    - Console: file-like interface accepted by ``print(..., file=console)``
    - RealConsole: writes to a stream, standard output by default
    - MemoryConsole: keeps everything written, for tests

Reports, summaries and JSON printed by the commands go through a Console;
diagnostics go through logging.

Example:
    >>> from isoruled.console import MemoryConsole
    >>> console = MemoryConsole()
    >>> print("surface  11 checks  PASS", file=console)
    >>> console.getvalue()
    'surface  11 checks  PASS\\n'
"""

import sys
from abc import ABC, abstractmethod
from io import StringIO
from typing import Optional, TextIO


class Console(ABC):
    """File-like console interface."""

    @abstractmethod
    def write(self, s: str) -> int:
        pass

    def flush(self) -> None:
        pass

    def writable(self) -> bool:
        return True


class RealConsole(Console):
    def __init__(self, stream: Optional[TextIO] = None):
        self._stream: TextIO = stream if stream is not None else sys.stdout

    def write(self, s: str) -> int:
        return self._stream.write(s)

    def flush(self) -> None:
        self._stream.flush()


class MemoryConsole(Console):
    """Console that captures output in memory."""

    def __init__(self):
        self._buffer = StringIO()

    def write(self, s: str) -> int:
        return self._buffer.write(s)

    def getvalue(self) -> str:
        return self._buffer.getvalue()

    def clear(self) -> None:
        self._buffer = StringIO()
