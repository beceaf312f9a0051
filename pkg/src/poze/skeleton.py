"""Skeleton definitions: joint names, ordering, and bone edges.

The default skeleton is the 17-joint Human3.6M layout emitted by common 3D
pose estimators. The table ships as package data so alternative skeletons
can be loaded from a config file with the same shape.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import ValidationError


@dataclass(frozen=True)
class Skeleton:
    """Ordered joint names plus the bone tree connecting them."""

    name: str
    joint_names: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(set(self.joint_names)) != len(self.joint_names):
            raise ValidationError("skeleton joint names must be unique")
        validate_edge_tree(self.edges, len(self.joint_names))

    @property
    def joint_count(self) -> int:
        return len(self.joint_names)

    def joint_index(self, name: str) -> int:
        try:
            return self.joint_names.index(name)
        except ValueError:
            raise ValidationError(f"unknown joint name {name!r}") from None

    def joint_name(self, index: int) -> str:
        if not 0 <= index < self.joint_count:
            raise ValidationError(f"joint index {index} out of range [0, {self.joint_count})")
        return self.joint_names[index]


def validate_edge_tree(edges: tuple[tuple[int, int], ...], joint_count: int) -> None:
    """Require edges to form a connected tree over all joints (J-1 edges)."""
    if joint_count == 1 and len(edges) == 0:
        return
    if len(edges) != joint_count - 1:
        raise ValidationError(
            f"skeleton edges must contain exactly {joint_count - 1} bones, got {len(edges)}"
        )
    adjacency: dict[int, list[int]] = {j: [] for j in range(joint_count)}
    for a, b in edges:
        if not (0 <= a < joint_count and 0 <= b < joint_count):
            raise ValidationError(f"edge ({a}, {b}) references a joint outside [0, {joint_count})")
        if a == b:
            raise ValidationError(f"edge ({a}, {b}) is a self-loop")
        adjacency[a].append(b)
        adjacency[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        for nxt in adjacency[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    if len(seen) != joint_count:
        raise ValidationError("skeleton edges do not connect all joints")


def skeleton_from_record(record: dict) -> Skeleton:
    for field in ("name", "joint_names", "edges"):
        if field not in record:
            raise ValidationError(f"skeleton config missing field {field!r}")
    return Skeleton(
        name=str(record["name"]),
        joint_names=tuple(str(n) for n in record["joint_names"]),
        edges=tuple((int(a), int(b)) for a, b in record["edges"]),
    )


def load_skeleton(path) -> Skeleton:
    """Load an alternative skeleton table from a JSON config file."""
    with open(path, "r", encoding="utf-8") as fh:
        return skeleton_from_record(json.load(fh))


@lru_cache(maxsize=1)
def default_skeleton() -> Skeleton:
    text = resources.files("poze.data").joinpath("skeleton_h36m17.json").read_text("utf-8")
    return skeleton_from_record(json.loads(text))
