import json

import pytest

from poze import (
    DatasetManifest,
    ManifestEntry,
    ValidationError,
    load_manifest,
    save_manifest,
    save_sequence,
)
from poze.manifest import manifest_to_record, validate_manifest_record
from conftest import make_sequence

import numpy as np


def write_seq(path, source_id):
    save_sequence(make_sequence(np.zeros((2, 2, 3)) + 0.5, source_id=source_id,
                                joint_names=("a", "b")), path)


def entry(path, technique="t", attribute="a", label="good", split="train"):
    return {"sequence_path": path, "technique": technique, "attribute": attribute,
            "label": label, "split": split}


def sample_record(tmp_path, n_train=2):
    names = []
    for k in range(n_train):
        name = f"train-{k}.json"
        write_seq(tmp_path / name, f"train-{k}")
        names.append(entry(name))
    write_seq(tmp_path / "test-0.json", "test-0")
    names.append(entry("test-0.json", label="bad", split="test"))
    return {"schema_version": "poze-manifest/1", "entries": names}


def test_round_trip(tmp_path):
    record = sample_record(tmp_path)
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps(record))
    manifest = load_manifest(path)
    assert len(manifest.entries) == 3
    save_manifest(manifest, tmp_path / "copy.json")
    again = load_manifest(tmp_path / "copy.json")
    assert again.entries == manifest.entries


def test_relative_paths_resolve_against_manifest_dir(tmp_path):
    record = sample_record(tmp_path)
    nested = tmp_path / "sub"
    nested.mkdir()
    (nested / "manifest.json").write_text(json.dumps(record))
    with pytest.raises(ValidationError) as info:
        load_manifest(nested / "manifest.json")
    assert any(v.code == "missing-sequence-file" for v in info.value.violations)
    manifest = load_manifest(nested / "manifest.json", check_paths=False)
    assert manifest.resolve(manifest.entries[0]).parent == nested


def test_validation_codes(tmp_path):
    record = sample_record(tmp_path)
    bad_label = dict(record, entries=[dict(record["entries"][0], label="great")]
                     + record["entries"][1:])
    codes = {v.code for v in validate_manifest_record(bad_label, str(tmp_path))}
    assert "bad-label" in codes
    bad_split = dict(record, entries=[dict(record["entries"][0], split="dev")]
                     + record["entries"][1:])
    codes = {v.code for v in validate_manifest_record(bad_split, str(tmp_path))}
    assert "bad-split" in codes
    assert validate_manifest_record({"schema_version": "x"})[0].code == "bad-schema-version"
    missing = dict(record, entries=record["entries"] + [entry("ghost.json")])
    codes = {v.code for v in validate_manifest_record(missing, str(tmp_path))}
    assert "missing-sequence-file" in codes


def test_group_exemplar_minimum(tmp_path):
    record = sample_record(tmp_path, n_train=1)
    codes = {v.code for v in validate_manifest_record(record, str(tmp_path))}
    assert "group-too-few-exemplars" in codes
    ok = sample_record(tmp_path, n_train=2)
    assert validate_manifest_record(ok, str(tmp_path)) == []


def test_groups_sorted():
    entries = tuple(
        ManifestEntry(f"{t}-{a}.json", t, a, "good", "train")
        for t in ("zeta", "alpha") for a in ("y", "x")
    )
    manifest = DatasetManifest(entries=entries)
    assert list(manifest.groups()) == [
        ("alpha", "x"), ("alpha", "y"), ("zeta", "x"), ("zeta", "y")]


def test_manifest_record_shape(tmp_path):
    record = sample_record(tmp_path)
    (tmp_path / "m.json").write_text(json.dumps(record))
    manifest = load_manifest(tmp_path / "m.json")
    out = manifest_to_record(manifest)
    assert out["schema_version"] == "poze-manifest/1"
    assert out["entries"][0]["sequence_path"] == "train-0.json"
