"""Filesystem abstraction for configuration input and report/mesh output.

Architecture:
    - Filesystem: Abstract base class defining the file operations commands use
    - RealFilesystem: Production implementation using pathlib
    - MemoryFilesystem: Test implementation with in-memory file storage

Usage:
    Commands take a Filesystem so that a full ``verify`` or ``export`` run can
    be exercised in tests without touching the disk.

    Example:
        >>> from isoruled.filesystem import MemoryFilesystem
        >>> fs = MemoryFilesystem()
        >>> fs.write_text("out/report.json", "{}")
        >>> fs.read_text("out/report.json")
        '{}'
        >>> fs.is_dir("out")
        True
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, Iterator, Set, Union

PathLike = Union[str, Path]


class Filesystem(ABC):
    """Abstract filesystem interface for file operations."""

    @abstractmethod
    def exists(self, path: PathLike) -> bool:
        """Check if a path exists."""
        pass

    @abstractmethod
    def is_file(self, path: PathLike) -> bool:
        pass

    @abstractmethod
    def is_dir(self, path: PathLike) -> bool:
        pass

    @abstractmethod
    def mkdir(self, path: PathLike, parents: bool = False, exist_ok: bool = False) -> None:
        """Create a directory.

        Args:
            path: Directory path
            parents: Create parent directories if needed
            exist_ok: Don't raise error if directory exists
        """
        pass

    @abstractmethod
    def read_text(self, path: PathLike, encoding: str = "utf-8") -> str:
        """Read text from a file.

        Raises:
            FileNotFoundError: If the file does not exist
        """
        pass

    @abstractmethod
    def write_text(self, path: PathLike, content: str, encoding: str = "utf-8") -> None:
        """Write text to a file, creating parent directories as needed."""
        pass

    @abstractmethod
    def listdir(self, path: PathLike) -> Iterator[str]:
        """Yield the entry names of a directory."""
        pass


class RealFilesystem(Filesystem):
    """Filesystem backed by the operating system."""

    def exists(self, path: PathLike) -> bool:
        return Path(path).exists()

    def is_file(self, path: PathLike) -> bool:
        return Path(path).is_file()

    def is_dir(self, path: PathLike) -> bool:
        return Path(path).is_dir()

    def mkdir(self, path: PathLike, parents: bool = False, exist_ok: bool = False) -> None:
        Path(path).mkdir(parents=parents, exist_ok=exist_ok)

    def read_text(self, path: PathLike, encoding: str = "utf-8") -> str:
        return Path(path).read_text(encoding=encoding)

    def write_text(self, path: PathLike, content: str, encoding: str = "utf-8") -> None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        # newline="" keeps the "\n" endings of reports identical across platforms
        with target.open("w", encoding=encoding, newline="") as f:
            f.write(content)

    def listdir(self, path: PathLike) -> Iterator[str]:
        for entry in sorted(Path(path).iterdir()):
            yield entry.name


class MemoryFilesystem(Filesystem):
    """In-memory filesystem for testing."""

    def __init__(self):
        self._files: Dict[str, bytes] = {}
        self._dirs: Set[str] = {"/"}

    def _normalize_path(self, path: PathLike) -> str:
        path_str = str(path).replace("\\", "/")
        if not path_str.startswith("/"):
            path_str = "/" + path_str
        if len(path_str) > 1:
            path_str = path_str.rstrip("/")
        return path_str

    def _ensure_parent_dir(self, path: str) -> None:
        parts = path.split("/")[1:-1]
        current = ""
        for part in parts:
            current += "/" + part
            self._dirs.add(current)

    def exists(self, path: PathLike) -> bool:
        p = self._normalize_path(path)
        return p in self._files or p in self._dirs

    def is_file(self, path: PathLike) -> bool:
        return self._normalize_path(path) in self._files

    def is_dir(self, path: PathLike) -> bool:
        return self._normalize_path(path) in self._dirs

    def mkdir(self, path: PathLike, parents: bool = False, exist_ok: bool = False) -> None:
        p = self._normalize_path(path)
        if p in self._dirs:
            if not exist_ok:
                raise FileExistsError(f"Directory exists: {path}")
            return
        if p in self._files:
            raise FileExistsError(f"File exists: {path}")
        parent = "/".join(p.split("/")[:-1]) or "/"
        if parent not in self._dirs:
            if not parents:
                raise FileNotFoundError(f"Parent directory does not exist: {parent}")
            self._ensure_parent_dir(p)
        self._dirs.add(p)

    def read_text(self, path: PathLike, encoding: str = "utf-8") -> str:
        p = self._normalize_path(path)
        if p not in self._files:
            raise FileNotFoundError(f"No such file: {path}")
        return self._files[p].decode(encoding)

    def write_text(self, path: PathLike, content: str, encoding: str = "utf-8") -> None:
        p = self._normalize_path(path)
        self._ensure_parent_dir(p)
        self._files[p] = content.encode(encoding)

    def listdir(self, path: PathLike) -> Iterator[str]:
        p = self._normalize_path(path)
        if p not in self._dirs:
            raise FileNotFoundError(f"No such directory: {path}")
        prefix = p.rstrip("/") + "/"
        names = set()
        for entry in list(self._files) + list(self._dirs):
            if entry.startswith(prefix) and entry != p:
                names.add(entry[len(prefix) :].split("/")[0])
        yield from sorted(names)
