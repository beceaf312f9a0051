"""Dataset manifests: labeled inventories of sequence files.

A manifest is a JSON document listing sequence files with their technique,
attribute, good/bad label, and train/test split. Relative sequence paths
resolve against the manifest's own directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ValidationError, Violation

MANIFEST_SCHEMA_VERSION = "poze-manifest/1"
LABELS = ("good", "bad")
SPLITS = ("train", "test")


@dataclass(frozen=True)
class ManifestEntry:
    sequence_path: str
    technique: str
    attribute: str
    label: str
    split: str

    def to_record(self) -> dict:
        return {
            "sequence_path": self.sequence_path,
            "technique": self.technique,
            "attribute": self.attribute,
            "label": self.label,
            "split": self.split,
        }


@dataclass(frozen=True)
class DatasetManifest:
    entries: tuple[ManifestEntry, ...]
    base_dir: str = "."

    def resolve(self, entry: ManifestEntry) -> Path:
        path = Path(entry.sequence_path)
        return path if path.is_absolute() else Path(self.base_dir) / path

    def groups(self) -> dict[tuple[str, str], list[ManifestEntry]]:
        """Entries keyed by (technique, attribute), keys in lexicographic order."""
        grouped: dict[tuple[str, str], list[ManifestEntry]] = {}
        for entry in self.entries:
            grouped.setdefault((entry.technique, entry.attribute), []).append(entry)
        return dict(sorted(grouped.items()))


def validate_manifest_record(record, base_dir: str = ".",
                             check_paths: bool = True) -> list[Violation]:
    if not isinstance(record, dict):
        return [Violation("wrong-type", "$", "document must be a JSON object")]
    if record.get("schema_version") != MANIFEST_SCHEMA_VERSION:
        return [Violation("bad-schema-version", "schema_version",
                          f"expected {MANIFEST_SCHEMA_VERSION!r}, got {record.get('schema_version')!r}")]
    entries = record.get("entries")
    if not isinstance(entries, list):
        return [Violation("missing-field", "entries", "entries array required")]
    violations: list[Violation] = []
    train_good: dict[tuple[str, str], int] = {}
    seen_groups: set[tuple[str, str]] = set()
    for k, entry in enumerate(entries):
        path = f"entries[{k}]"
        if not isinstance(entry, dict):
            violations.append(Violation("wrong-type", path, "entry must be an object"))
            continue
        missing = [f for f in ("sequence_path", "technique", "attribute", "label", "split")
                   if not isinstance(entry.get(f), str)]
        if missing:
            violations.append(Violation("missing-field", path, f"missing or non-string: {missing}"))
            continue
        if entry["label"] not in LABELS:
            violations.append(Violation("bad-label", f"{path}.label",
                                        f"label must be one of {LABELS}, got {entry['label']!r}"))
        if entry["split"] not in SPLITS:
            violations.append(Violation("bad-split", f"{path}.split",
                                        f"split must be one of {SPLITS}, got {entry['split']!r}"))
        group = (entry["technique"], entry["attribute"])
        seen_groups.add(group)
        if entry.get("label") == "good" and entry.get("split") == "train":
            train_good[group] = train_good.get(group, 0) + 1
        if check_paths:
            target = Path(entry["sequence_path"])
            if not target.is_absolute():
                target = Path(base_dir) / target
            if not target.is_file():
                violations.append(Violation("missing-sequence-file", f"{path}.sequence_path",
                                            f"no file at {os.fspath(target)!r}"))
    for group in sorted(seen_groups):
        if train_good.get(group, 0) < 2:
            violations.append(Violation(
                "group-too-few-exemplars", "entries",
                f"group {group} has {train_good.get(group, 0)} train/good entries, needs >= 2",
            ))
    return violations


def manifest_from_record(record: dict, base_dir: str = ".",
                         check_paths: bool = True) -> DatasetManifest:
    violations = validate_manifest_record(record, base_dir, check_paths)
    if violations:
        raise ValidationError(f"invalid manifest: {violations[0].message}", violations)
    entries = tuple(
        ManifestEntry(
            sequence_path=e["sequence_path"],
            technique=e["technique"],
            attribute=e["attribute"],
            label=e["label"],
            split=e["split"],
        )
        for e in record["entries"]
    )
    return DatasetManifest(entries=entries, base_dir=base_dir)


def manifest_to_record(manifest: DatasetManifest) -> dict:
    return {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "entries": [e.to_record() for e in manifest.entries],
    }


def load_manifest(path, check_paths: bool = True) -> DatasetManifest:
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        try:
            record = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    try:
        return manifest_from_record(record, base_dir=os.fspath(path.parent), check_paths=check_paths)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}", exc.violations) from None


def save_manifest(manifest: DatasetManifest, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest_to_record(manifest), fh, allow_nan=False, indent=2)
        fh.write("\n")
