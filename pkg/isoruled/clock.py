"""Clock abstraction for report timestamps and runtimes.

Architecture:
    - Clock: Abstract base class defining the time interface
    - RealClock: Production implementation using Python's time module
    - SyntheticClock: Test implementation with manual time control

Usage:
    Reports record when they were generated and how long the suites took.
    Tests pass a SyntheticClock so those fields are predictable.

    Example:
        >>> from isoruled.clock import SyntheticClock
        >>> clock = SyntheticClock(start_time=100.0)
        >>> clock.advance(5.0)
        >>> clock.time()
        105.0
"""

from __future__ import annotations

import threading
import time
from abc import ABC, abstractmethod


class Clock(ABC):
    """Abstract clock interface for time operations."""

    @abstractmethod
    def time(self) -> float:
        """Get current time as seconds since epoch."""
        pass

    @abstractmethod
    def monotonic(self) -> float:
        """Get monotonic time (not affected by system clock adjustments)."""
        pass


class RealClock(Clock):
    """Clock backed by the system time."""

    def time(self) -> float:
        return time.time()

    def monotonic(self) -> float:
        return time.monotonic()


class SyntheticClock(Clock):
    """Manually driven clock for tests.

    Both ``time()`` and ``monotonic()`` report the same synthetic value,
    which only changes through ``advance`` and ``set_time``.

    Args:
        start_time: Initial time in seconds since epoch
    """

    def __init__(self, start_time: float = 0.0):
        self._current_time = float(start_time)
        self._lock = threading.Lock()

    def time(self) -> float:
        with self._lock:
            return self._current_time

    def monotonic(self) -> float:
        with self._lock:
            return self._current_time

    def advance(self, seconds: float) -> None:
        """Advance time by the given number of seconds.

        Raises:
            ValueError: If seconds is negative
        """
        if seconds < 0:
            raise ValueError("Cannot advance time backwards")
        with self._lock:
            self._current_time += seconds

    def set_time(self, timestamp: float) -> None:
        with self._lock:
            self._current_time = float(timestamp)
