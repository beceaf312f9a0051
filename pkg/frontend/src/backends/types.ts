/**
 * Estimator backend contract: video in, per-frame raw landmarks out.
 *
 * A backend reports its landmarks in whatever order its model uses; the
 * jointMap declares how every canonical joint is sourced from them. The map
 * must be total over all 17 canonical joints — a joint a backend cannot
 * provide is declared `unsupported`, which is a hard error at extraction
 * time, never a silent zero.
 */

import { CanonicalJoint } from "../skeleton.js";
import { Triple } from "../sequenceFile.js";

export type JointSource =
  | { kind: "index"; index: number }
  | { kind: "average"; indices: number[] }
  | { kind: "unsupported" };

export type JointMap = Record<CanonicalJoint, JointSource>;

/** One frame of raw estimator output; null when no person was detected. */
export type RawFrame = Triple[] | null;

export interface BackendResult {
  fps: number;
  /** Landmark count every present frame must match. */
  landmarkCount: number;
  frames: RawFrame[];
}

export interface EstimatorBackend {
  readonly name: string;
  readonly jointMap: JointMap;
  extract(videoPath: string): Promise<BackendResult>;
}
