"""Exception hierarchy for isoruled.

All errors raised by the library derive from :class:`IsoRuledError` so callers
(the CLI in particular) can separate geometric failures from programming
errors. Errors that describe bad input also derive from ``ValueError``.
"""

from typing import Optional


class IsoRuledError(Exception):
    """Base class for all isoruled errors."""


class ShapeError(IsoRuledError, ValueError):
    """Operands have incompatible component counts, orders or base points."""


class DegeneracyError(IsoRuledError):
    """A set of vectors is (numerically) linearly dependent.

    Attributes:
        index: Position of the first vector that failed the rank test
        point: Parameter value where the failure happened, if known
    """

    def __init__(self, message: str, index: Optional[int] = None, point: Optional[complex] = None):
        super().__init__(message)
        self.index = index
        self.point = point

    def at(self, point: complex) -> "DegeneracyError":
        """Return a copy of this error tagged with the offending point."""
        if self.point is not None:
            return self
        return DegeneracyError(f"{self} (at z={point})", index=self.index, point=point)


class DomainError(IsoRuledError, ValueError):
    """A parameter lies outside its admissible range."""


class SeedError(IsoRuledError, ValueError):
    """Seed data cannot produce a surface."""


class ModelViolationError(IsoRuledError):
    """An operation needs a 1-isotropic chart and was given something else."""


class AlignmentError(IsoRuledError, ValueError):
    """A point cloud is too small or too degenerate for rigid alignment."""


class ProjectionError(IsoRuledError, ValueError):
    """A mesh projection does not have rank three."""


class ConfigError(IsoRuledError, ValueError):
    """A run configuration could not be parsed or validated.

    Attributes:
        field: Dotted path of the offending field (e.g. ``"samples.radius"``)
        line: Line number in the source document for syntax errors
    """

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        location = ""
        if field:
            location = f" [field {field}]"
        if line is not None:
            location += f" [line {line}]"
        super().__init__(f"{message}{location}")
        self.field = field
        self.line = line
