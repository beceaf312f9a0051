from __future__ import annotations

import struct

import numpy as np
import pytest

from poze import PoseSequence, default_skeleton


def bits_equal(a, b) -> bool:
    """Bitwise float equality (distinguishes -0.0/0.0, unlike ==)."""
    a = np.atleast_1d(np.asarray(a, dtype=np.float64)).ravel()
    b = np.atleast_1d(np.asarray(b, dtype=np.float64)).ravel()
    if a.shape != b.shape:
        return False
    return all(struct.pack("<d", x) == struct.pack("<d", y) for x, y in zip(a, b))


def generic_names(joint_count: int) -> tuple[str, ...]:
    return tuple(f"j{k:02d}" for k in range(joint_count))


def make_sequence(frames, fps: float = 30.0, source_id: str = "seq",
                  joint_names=None, normalized: bool = False) -> PoseSequence:
    frames = np.asarray(frames, dtype=np.float64)
    if joint_names is None:
        joint_names = (default_skeleton().joint_names if frames.shape[1] == 17
                       else generic_names(frames.shape[1]))
    return PoseSequence(frames=frames, fps=fps, source_id=source_id,
                        joint_names=joint_names, normalized=normalized)


def seq_1d(values, source_id: str = "seq", normalized: bool = True) -> PoseSequence:
    """One-joint sequence with the signal on the x axis (alignment toys)."""
    frames = np.zeros((len(values), 1, 3))
    frames[:, 0, 0] = values
    return make_sequence(frames, source_id=source_id, normalized=normalized)


def random_frames(rng: np.random.Generator, n: int, joint_count: int) -> np.ndarray:
    return rng.standard_normal((n, joint_count, 3))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
