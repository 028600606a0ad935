"""Tests for Console interface and implementations."""

from io import StringIO

import pytest

from isoruled.console import Console, MemoryConsole, RealConsole


class TestRealConsole:
    """Tests for RealConsole implementation."""

    def test_write_to_custom_stream(self):
        """Test writing to a custom stream."""
        stream = StringIO()
        console = RealConsole(stream)
        assert console.write("Test message") == 12
        console.flush()
        assert stream.getvalue() == "Test message"

    def test_print_target(self):
        """Console works as the file argument of print()."""
        stream = StringIO()
        print("surface", "PASS", file=RealConsole(stream))
        assert stream.getvalue() == "surface PASS\n"

    def test_writable(self):
        assert RealConsole(StringIO()).writable()


class TestMemoryConsole:
    """Tests for MemoryConsole implementation."""

    def test_captures_output(self):
        console = MemoryConsole()
        print("line one", file=console)
        print("line two", file=console)
        assert console.getvalue() == "line one\nline two\n"

    def test_clear(self):
        console = MemoryConsole()
        console.write("old")
        console.clear()
        assert console.getvalue() == ""


def test_console_is_abstract():
    """Console cannot be instantiated directly."""
    with pytest.raises(TypeError):
        Console()  # type: ignore[abstract]
