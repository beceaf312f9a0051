"""Error types and machine-readable validation violations.

Exit-code contract used by the CLI: ValidationError and subclasses map to
exit code 2 (bad input / bad usage), every other PozeError or OSError maps
to exit code 1 (runtime failure).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """One validation finding with a stable machine-readable code."""

    code: str
    path: str
    message: str
    frame: int | None = None
    joint: int | None = None

    def to_record(self) -> dict:
        rec: dict = {"code": self.code, "path": self.path, "message": self.message}
        if self.frame is not None:
            rec["frame"] = self.frame
        if self.joint is not None:
            rec["joint"] = self.joint
        return rec


class PozeError(Exception):
    """Base class for all toolkit errors."""

    #: pipeline stage attached when an error propagates through feedback()
    stage: str | None = None


class ValidationError(PozeError):
    """Input failed schema or invariant validation."""

    def __init__(self, message: str, violations: list[Violation] | None = None):
        super().__init__(message)
        self.violations: list[Violation] = list(violations or [])


class SkeletonMismatchError(ValidationError):
    """Sequences or models disagree on joint count or joint names."""


class NotNormalizedError(ValidationError):
    """Operation requires normalized input but the flag is not set."""


class AlreadyNormalizedError(ValidationError):
    """normalize_sequence called on an already-normalized sequence."""


class InfeasibleBandError(ValidationError):
    """Alignment band is too narrow for the given sequence lengths."""


class DegenerateSkeletonError(PozeError):
    """Scale statistic (or heading vector) fell below the degeneracy threshold."""
