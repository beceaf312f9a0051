import json
from pathlib import Path

import numpy as np
import pytest

from poze import SyntheticSpec, ValidationError, build_model, gen_synthetic, load_sequence
from poze.synthetic import ARM_JOINTS, CORRUPTIONS


def light_spec(**overrides):
    base = dict(exemplars=3, good_tests=2, bad_tests=2, frames=10)
    base.update(overrides)
    return SyntheticSpec(**base)


def read_all_bytes(root: Path) -> dict[str, bytes]:
    return {p.relative_to(root).as_posix(): p.read_bytes()
            for p in sorted(root.rglob("*.json"))}


def test_same_seed_byte_identical(tmp_path):
    gen_synthetic(7, light_spec(), tmp_path / "a")
    gen_synthetic(7, light_spec(), tmp_path / "b")
    a = read_all_bytes(tmp_path / "a")
    b = read_all_bytes(tmp_path / "b")
    assert a.keys() == b.keys()
    assert all(a[k] == b[k] for k in a)


def test_different_seed_differs(tmp_path):
    gen_synthetic(1, light_spec(), tmp_path / "a")
    gen_synthetic(2, light_spec(), tmp_path / "b")
    a = read_all_bytes(tmp_path / "a")
    b = read_all_bytes(tmp_path / "b")
    assert any(a[k] != b[k] for k in a if "sequences/" in k)


def test_manifest_structure(tmp_path):
    manifest = gen_synthetic(3, light_spec(), tmp_path)
    groups = manifest.groups()
    assert list(groups) == [("swing", "form")]
    entries = groups[("swing", "form")]
    train = [e for e in entries if e.split == "train"]
    tests = [e for e in entries if e.split == "test"]
    assert len(train) == 3 and all(e.label == "good" for e in train)
    assert sorted(e.label for e in tests) == ["bad", "bad", "good", "good"]
    for entry in entries:
        seq = load_sequence(manifest.resolve(entry))
        assert seq.n_frames == 10
        assert seq.joint_count == 17
        assert not seq.normalized


def test_zero_noise_degenerate_model(tmp_path):
    manifest = gen_synthetic(5, light_spec(noise=0.0, corruption_scale=0.0), tmp_path)
    train = [e for e in manifest.entries if e.split == "train"]
    exemplars = [load_sequence(manifest.resolve(e)) for e in train]
    model = build_model(exemplars, "swing", "form")
    # per-item size/translation jitter leaves only rounding-level residue
    assert np.max(model.mu) <= 1e-12
    assert np.all(model.sigma == model.sigma_floor)


def test_limb_offset_touches_only_configured_joints(tmp_path):
    # identical seed, corruption on vs off: bad items must differ exactly on
    # the corrupted joints and nowhere else (draw streams are aligned)
    clean = gen_synthetic(11, light_spec(corruption_scale=0.0), tmp_path / "clean")
    hit = gen_synthetic(11, light_spec(corruption_scale=5.0), tmp_path / "hit")
    for e_clean, e_hit in zip(clean.entries, hit.entries):
        a = load_sequence(clean.resolve(e_clean))
        b = load_sequence(hit.resolve(e_hit))
        diff = a.frames != b.frames
        if e_clean.label == "bad":
            assert np.all(np.any(diff, axis=2)[:, list(ARM_JOINTS)])
            untouched = [j for j in range(17) if j not in ARM_JOINTS]
            assert not np.any(diff[:, untouched, :])
        else:
            assert not np.any(diff)


def test_offset_magnitude_is_scale_times_noise(tmp_path):
    noise, scale = 0.001, 4.0
    clean = gen_synthetic(13, light_spec(noise=noise, corruption_scale=0.0), tmp_path / "c")
    hit = gen_synthetic(13, light_spec(noise=noise, corruption_scale=scale), tmp_path / "h")
    bad = [(c, h) for c, h in zip(clean.entries, hit.entries) if c.label == "bad"]
    for e_clean, e_hit in bad:
        a = load_sequence(clean.resolve(e_clean)).frames
        b = load_sequence(hit.resolve(e_hit)).frames
        delta = (b - a)[:, ARM_JOINTS[0], :]
        mags = np.linalg.norm(delta, axis=1)
        # the item's uniform size jitter scales the offset along with the noise
        assert np.allclose(mags / mags[0], 1.0, atol=1e-12)
        assert 0.9 * scale * noise <= mags[0] <= 1.1 * scale * noise


def test_time_warp_kind(tmp_path):
    manifest = gen_synthetic(9, light_spec(corruption="segment-time-warp",
                                           frames=30), tmp_path)
    bad = [e for e in manifest.entries if e.label == "bad"]
    assert bad
    for entry in bad:
        seq = load_sequence(manifest.resolve(entry))
        assert seq.n_frames == 30


def test_spec_validation():
    with pytest.raises(ValidationError):
        SyntheticSpec(exemplars=1)
    with pytest.raises(ValidationError):
        SyntheticSpec(frames=1)
    with pytest.raises(ValidationError):
        SyntheticSpec(fps=0.0)
    with pytest.raises(ValidationError):
        SyntheticSpec(noise=-0.1)
    with pytest.raises(ValidationError):
        SyntheticSpec(corruption="teleport")
    with pytest.raises(ValidationError):
        SyntheticSpec(corruption_joints=(99,))
    assert set(CORRUPTIONS) == {"limb-offset", "segment-time-warp"}


def test_default_spec_matches_protocol():
    spec = SyntheticSpec()
    assert spec.exemplars == 30
    assert spec.good_tests == 20 and spec.bad_tests == 20
    assert spec.frames == 60 and spec.fps == 30.0
    assert spec.corruption == "limb-offset" and spec.corruption_scale == 5.0
    record = spec.to_record()
    assert json.dumps(record)  # serializable for provenance echoes
