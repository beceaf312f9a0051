"""Canonical pose-sequence data model and the poze-seq/1 file format.

A sequence file is a JSON document; coordinates are written with Python's
shortest round-trip float representation, so save -> load reproduces every
binary64 value bit-exactly (see docs/formats.md for the full schema).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ValidationError, Violation

SEQUENCE_SCHEMA_VERSION = "poze-seq/1"


@dataclass(frozen=True)
class PoseSequence:
    """Ordered 3D skeleton frames with capture metadata.

    frames has shape (n, J, 3), float64, and is frozen read-only after
    construction; n >= 2 and every coordinate must be finite.
    """

    frames: np.ndarray
    fps: float
    source_id: str
    joint_names: tuple[str, ...]
    normalized: bool = False

    def __post_init__(self):
        frames = np.asarray(self.frames, dtype=np.float64)
        if frames.ndim != 3 or frames.shape[2] != 3:
            raise ValidationError(
                f"frames must have shape (n, J, 3), got {frames.shape}"
            )
        if frames.shape[0] < 2:
            raise ValidationError(
                f"a sequence needs at least 2 frames, got {frames.shape[0]}",
                [Violation("too-few-frames", "frames", f"got {frames.shape[0]} frames")],
            )
        if frames.shape[1] != len(self.joint_names):
            raise ValidationError(
                f"frames carry {frames.shape[1]} joints but {len(self.joint_names)} names given"
            )
        bad = np.argwhere(~np.isfinite(frames))
        if bad.size:
            f, j = int(bad[0][0]), int(bad[0][1])
            raise ValidationError(
                f"non-finite coordinate at frame {f} joint {j}",
                [Violation("non-finite-coordinate", f"frames[{f}][{j}]",
                           "coordinate is NaN or Inf", frame=f, joint=j)],
            )
        if not (isinstance(self.fps, (int, float)) and math.isfinite(self.fps) and self.fps > 0):
            raise ValidationError(
                f"fps must be a positive finite number, got {self.fps!r}",
                [Violation("nonpositive-fps", "fps", f"got {self.fps!r}")],
            )
        frames = frames.copy() if frames.flags.writeable else frames
        frames.flags.writeable = False
        object.__setattr__(self, "frames", frames)
        object.__setattr__(self, "fps", float(self.fps))
        object.__setattr__(self, "joint_names", tuple(self.joint_names))

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def joint_count(self) -> int:
        return self.frames.shape[1]

    def with_frames(self, frames: np.ndarray, normalized: bool) -> "PoseSequence":
        return replace(self, frames=frames, normalized=normalized)


def _check_coordinate_rows(frames, joint_count: int) -> list[Violation]:
    violations = []
    for f, frame in enumerate(frames):
        if not isinstance(frame, list):
            violations.append(Violation("wrong-type", f"frames[{f}]", "frame must be an array", frame=f))
            continue
        if len(frame) != joint_count:
            violations.append(Violation(
                "joint-count-mismatch", f"frames[{f}]",
                f"frame {f} has {len(frame)} joints, expected {joint_count}", frame=f,
            ))
            continue
        for j, triple in enumerate(frame):
            if not (isinstance(triple, list) and len(triple) == 3):
                violations.append(Violation(
                    "bad-triple", f"frames[{f}][{j}]",
                    "joint coordinate must be an [x, y, z] array", frame=f, joint=j,
                ))
                continue
            for axis, value in enumerate(triple):
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    violations.append(Violation(
                        "wrong-type", f"frames[{f}][{j}][{axis}]",
                        "coordinate must be a number", frame=f, joint=j,
                    ))
                elif not math.isfinite(value):
                    violations.append(Violation(
                        "non-finite-coordinate", f"frames[{f}][{j}][{axis}]",
                        f"coordinate is {value!r} at frame {f} joint {j}", frame=f, joint=j,
                    ))
    return violations


def validate_sequence_record(record) -> list[Violation]:
    """Validate a raw parsed JSON record against every poze-seq/1 invariant.

    Returns an empty list iff the record loads into a valid PoseSequence;
    violations carry machine-readable codes and field paths.
    """
    if not isinstance(record, dict):
        return [Violation("wrong-type", "$", "document must be a JSON object")]
    violations: list[Violation] = []
    required = {
        "schema_version": str, "source_id": str, "fps": (int, float),
        "joint_count": int, "joint_names": list, "normalized": bool, "frames": list,
    }
    for field, kind in required.items():
        if field not in record:
            violations.append(Violation("missing-field", field, f"required field {field!r} missing"))
        elif not isinstance(record[field], kind) or isinstance(record[field], bool) and kind is not bool:
            violations.append(Violation("wrong-type", field, f"field {field!r} has wrong type"))
    if violations:
        return violations
    if record["schema_version"] != SEQUENCE_SCHEMA_VERSION:
        return [Violation("bad-schema-version", "schema_version",
                          f"expected {SEQUENCE_SCHEMA_VERSION!r}, got {record['schema_version']!r}")]
    joint_count = record["joint_count"]
    if joint_count < 1:
        violations.append(Violation("bad-joint-count", "joint_count", f"got {joint_count}"))
    if not (math.isfinite(record["fps"]) and record["fps"] > 0):
        violations.append(Violation("nonpositive-fps", "fps", f"got {record['fps']!r}"))
    names = record["joint_names"]
    if len(names) != joint_count or any(not isinstance(n, str) for n in names):
        violations.append(Violation(
            "joint-names-mismatch", "joint_names",
            f"expected {joint_count} string names, got {len(names)} entries",
        ))
    elif len(set(names)) != len(names):
        violations.append(Violation("duplicate-joint-name", "joint_names", "joint names must be unique"))
    frames = record["frames"]
    if len(frames) < 2:
        violations.append(Violation("too-few-frames", "frames", f"got {len(frames)} frames, need >= 2"))
    if joint_count >= 1:
        violations.extend(_check_coordinate_rows(frames, joint_count))
    return violations


def sequence_from_record(record: dict) -> PoseSequence:
    violations = validate_sequence_record(record)
    if violations:
        first = violations[0]
        raise ValidationError(f"invalid sequence record: {first.message}", violations)
    return PoseSequence(
        frames=np.asarray(record["frames"], dtype=np.float64),
        fps=float(record["fps"]),
        source_id=record["source_id"],
        joint_names=tuple(record["joint_names"]),
        normalized=record["normalized"],
    )


def sequence_to_record(seq: PoseSequence) -> dict:
    return {
        "schema_version": SEQUENCE_SCHEMA_VERSION,
        "source_id": seq.source_id,
        "fps": seq.fps,
        "joint_count": seq.joint_count,
        "joint_names": list(seq.joint_names),
        "normalized": seq.normalized,
        "frames": seq.frames.tolist(),
    }


def load_sequence(path) -> PoseSequence:
    """Load and validate a poze-seq/1 file; raises ValidationError on any violation."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            record = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(
                f"{path}: not valid JSON ({exc})",
                [Violation("invalid-json", "$", str(exc))],
            ) from exc
    try:
        return sequence_from_record(record)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}", exc.violations) from None


def save_sequence(seq: PoseSequence, path) -> None:
    """Write a sequence file that round-trips every coordinate bit-exactly."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(sequence_to_record(seq), fh, allow_nan=False)
        fh.write("\n")
