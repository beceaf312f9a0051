import json
import math
from pathlib import Path

import numpy as np
import pytest

from poze import (
    PoseSequence,
    ValidationError,
    load_sequence,
    save_sequence,
    sequence_from_record,
    sequence_to_record,
    validate_sequence_record,
)
from conftest import bits_equal, generic_names, make_sequence

FIXTURES = Path(__file__).parent / "fixtures"


def test_load_valid_fixture():
    seq = load_sequence(FIXTURES / "valid_17joint.json")
    assert seq.n_frames == 2
    assert seq.joint_count == 17
    assert seq.fps == 30.0
    assert not seq.normalized
    assert seq.joint_names[0] == "pelvis"


def test_load_wrong_joint_count_names_frame():
    with pytest.raises(ValidationError) as info:
        load_sequence(FIXTURES / "bad_joint_count.json")
    violations = info.value.violations
    assert any(v.code == "joint-count-mismatch" and v.frame == 1 for v in violations)


def test_load_nan_coordinate_cites_frame_and_joint():
    with pytest.raises(ValidationError) as info:
        load_sequence(FIXTURES / "nan_coordinate.json")
    violations = [v for v in info.value.violations if v.code == "non-finite-coordinate"]
    assert violations
    assert violations[0].frame == 1
    assert violations[0].joint == 12


def test_load_missing_file_is_oserror(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_sequence(tmp_path / "nope.json")


def test_load_malformed_json(tmp_path):
    path = tmp_path / "garbled.json"
    path.write_text("{not json")
    with pytest.raises(ValidationError) as info:
        load_sequence(path)
    assert info.value.violations[0].code == "invalid-json"


def test_round_trip_bit_exact(tmp_path, rng):
    frames = rng.standard_normal((5, 17, 3))
    frames[0, 0, 0] = 0.1  # not exactly representable in decimal
    frames[1, 2, 1] = -0.0
    frames[2, 3, 2] = 1e-300
    seq = make_sequence(frames, fps=29.97, source_id="rt")
    path = tmp_path / "seq.json"
    save_sequence(seq, path)
    loaded = load_sequence(path)
    assert bits_equal(loaded.frames, seq.frames)
    assert loaded.fps == seq.fps
    assert loaded.source_id == seq.source_id
    assert loaded.joint_names == seq.joint_names
    assert loaded.normalized == seq.normalized


def test_round_trip_many_random_values(tmp_path, rng):
    for k in range(20):
        frames = rng.standard_normal((3, 4, 3)) * 10.0 ** rng.integers(-6, 6)
        seq = make_sequence(frames, source_id=f"rt-{k}")
        path = tmp_path / "seq.json"
        save_sequence(seq, path)
        assert bits_equal(load_sequence(path).frames, seq.frames)


def test_empty_frames_refused_at_construction():
    with pytest.raises(ValidationError):
        make_sequence(np.zeros((0, 3, 3)))


def test_single_frame_refused():
    with pytest.raises(ValidationError) as info:
        make_sequence(np.zeros((1, 3, 3)))
    assert any(v.code == "too-few-frames" for v in info.value.violations)


def test_nonpositive_fps_refused():
    with pytest.raises(ValidationError):
        make_sequence(np.zeros((2, 3, 3)), fps=0.0)
    with pytest.raises(ValidationError):
        make_sequence(np.zeros((2, 3, 3)), fps=-1.0)


def test_nan_refused_at_construction():
    frames = np.zeros((3, 2, 3))
    frames[2, 1, 0] = math.inf
    with pytest.raises(ValidationError) as info:
        make_sequence(frames)
    v = info.value.violations[0]
    assert v.code == "non-finite-coordinate" and v.frame == 2 and v.joint == 1


def test_frames_are_immutable(rng):
    seq = make_sequence(rng.standard_normal((2, 3, 3)))
    with pytest.raises(ValueError):
        seq.frames[0, 0, 0] = 5.0


def test_validate_record_valid_is_empty():
    record = json.loads((FIXTURES / "valid_17joint.json").read_text())
    assert validate_sequence_record(record) == []


def test_validate_record_codes():
    record = sequence_to_record(make_sequence(np.zeros((2, 2, 3)), joint_names=("a", "b")))
    one_frame = dict(record, frames=record["frames"][:1])
    assert any(v.code == "too-few-frames" for v in validate_sequence_record(one_frame))
    zero_fps = dict(record, fps=0)
    assert any(v.code == "nonpositive-fps" for v in validate_sequence_record(zero_fps))
    wrong_version = dict(record, schema_version="poze-seq/9")
    assert [v.code for v in validate_sequence_record(wrong_version)] == ["bad-schema-version"]
    missing = {k: v for k, v in record.items() if k != "fps"}
    assert any(v.code == "missing-field" and v.path == "fps"
               for v in validate_sequence_record(missing))
    assert validate_sequence_record(["not", "an", "object"])[0].code == "wrong-type"


def test_validation_completeness_roundtrip():
    # any record passing validation must construct a sequence, and vice versa
    record = sequence_to_record(make_sequence(np.ones((3, 2, 3)), joint_names=("a", "b")))
    assert validate_sequence_record(record) == []
    seq = sequence_from_record(record)
    assert seq.n_frames == 3

    broken = dict(record)
    broken["frames"] = [[[1.0, 2.0], [0.0, 0.0, 0.0]]] * 3
    violations = validate_sequence_record(broken)
    assert violations
    with pytest.raises(ValidationError):
        sequence_from_record(broken)


def test_generic_names_helper():
    assert generic_names(3) == ("j00", "j01", "j02")
