/**
 * Canonical 17-joint skeleton shared with the core package through the
 * poze-seq/1 format (see ../docs/formats.md for the authoritative table).
 */

export const CANONICAL_JOINTS = [
  "pelvis",
  "right_hip",
  "right_knee",
  "right_ankle",
  "left_hip",
  "left_knee",
  "left_ankle",
  "spine",
  "thorax",
  "neck",
  "head",
  "left_shoulder",
  "left_elbow",
  "left_wrist",
  "right_shoulder",
  "right_elbow",
  "right_wrist",
] as const;

export type CanonicalJoint = (typeof CANONICAL_JOINTS)[number];

export const JOINT_COUNT = CANONICAL_JOINTS.length;

export const SKELETON_EDGES: ReadonlyArray<readonly [number, number]> = [
  [0, 1], [1, 2], [2, 3],
  [0, 4], [4, 5], [5, 6],
  [0, 7], [7, 8], [8, 9], [9, 10],
  [8, 11], [11, 12], [12, 13],
  [8, 14], [14, 15], [15, 16],
];
