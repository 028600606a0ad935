"""Verification reports: named residuals with their tolerances and verdicts.

Every check records which identity it tests (``anchor``), the largest and
mean residual over its samples, the tolerance and whether that tolerance is
an upper bound (residuals that must be small) or a lower bound (contrast
controls and witnesses that must be large).

A report serializes to canonical JSON (sorted keys; suites and checks listed
in run order) and to a flat CSV table. Sample points skipped because the
frame degenerates there are listed in ``skipped_samples``.
The JSON body apart from ``generated_at`` and ``runtime_s`` depends only on
the configuration, so two runs of one configuration can be diffed.
"""

import logging
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

from isoruled.serde import CSVSerDe, JSONSerDe

logger = logging.getLogger(__name__)

UPPER = "upper"
LOWER = "lower"

TABLE_COLUMNS = ["suite", "name", "anchor", "bound", "tol", "max", "mean", "samples", "passed"]


@dataclass(frozen=True)
class Check:
    """One named residual over a set of samples."""

    suite: str
    name: str
    anchor: str
    max: float
    mean: float
    tol: float
    bound: str = UPPER
    samples: int = 1

    @classmethod
    def from_values(
        cls,
        suite: str,
        name: str,
        anchor: str,
        values: Iterable[float],
        tol: float,
        bound: str = UPPER,
    ) -> "Check":
        v = np.asarray(list(values), dtype=float)
        if v.size == 0:
            return cls(suite, name, anchor, math.nan, math.nan, tol, bound, 0)
        worst, mean = float(np.max(v)), float(np.mean(v))
        return cls(suite, name, anchor, worst, mean, tol, bound, int(v.size))

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.max):
            return False
        if self.bound == LOWER:
            return self.max >= self.tol
        return self.max <= self.tol

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "name": self.name,
            "anchor": self.anchor,
            "max": self.max,
            "mean": self.mean,
            "tol": self.tol,
            "bound": self.bound,
            "samples": self.samples,
            "passed": self.passed,
        }


@dataclass
class VerificationReport:
    """All checks of one run, in suite order."""

    name: str
    config: Dict[str, Any]
    checks: List[Check] = field(default_factory=list)
    generated_at: Optional[float] = None
    runtime_s: Optional[float] = None
    skipped: List[complex] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def suites(self) -> List[str]:
        seen: List[str] = []
        for c in self.checks:
            if c.suite not in seen:
                seen.append(c.suite)
        return seen

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def suite_passed(self, suite: str) -> bool:
        return all(c.passed for c in self.checks if c.suite == suite)

    def body(self) -> Dict[str, Any]:
        """Everything except the timestamp and runtime."""
        return {
            "name": self.name,
            "config": self.config,
            "passed": self.passed,
            "suites": [{"name": s, "passed": self.suite_passed(s)} for s in self.suites],
            "checks": [c.to_dict() for c in self.checks],
            "skipped_samples": [[z.real, z.imag] for z in self.skipped],
        }

    def to_dict(self) -> Dict[str, Any]:
        out = self.body()
        out["generated_at"] = (
            None
            if self.generated_at is None
            else datetime.fromtimestamp(self.generated_at, tz=timezone.utc).isoformat()
        )
        out["runtime_s"] = self.runtime_s
        return out

    def to_json(self) -> str:
        return JSONSerDe().serialize(self.to_dict()) + "\n"

    def to_csv(self) -> str:
        rows = [c.to_dict() for c in self.checks]
        return CSVSerDe(TABLE_COLUMNS).serialize(rows)

    def summary(self) -> str:
        """Human-readable one-line-per-suite summary."""
        lines = []
        for s in self.suites:
            checks = [c for c in self.checks if c.suite == s]
            bad = [c.name for c in checks if not c.passed]
            status = "PASS" if not bad else f"FAIL ({', '.join(bad)})"
            lines.append(f"{s:8s} {len(checks):3d} checks  {status}")
        if self.skipped:
            lines.append(f"skipped {len(self.skipped)} degenerate sample point(s)")
        return "\n".join(lines)
