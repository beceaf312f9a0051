/**
 * CI backend: no model, no video decode. The "video" is a small JSON
 * descriptor and the landmarks are a deterministic synthetic skeleton, so
 * the whole extract path (stride, detection gaps, remap, writer) exercises
 * without downloading anything.
 *
 * Descriptor format (poze-fake-video/1):
 *   { "kind": "poze-fake-video/1", "fps": 30, "frame_count": 40, "seed": 7,
 *     "missing_frames": [3, 5] }            // optional: frames with no person
 */

import { readFileSync } from "node:fs";

import { AdapterValidationError, ExtractionFailedError } from "../errors.js";
import { Triple } from "../sequenceFile.js";
import { CANONICAL_JOINTS, CanonicalJoint } from "../skeleton.js";
import { BackendResult, EstimatorBackend, JointMap } from "./types.js";

export const FAKE_VIDEO_KIND = "poze-fake-video/1";

interface FakeVideoDescriptor {
  kind: string;
  fps: number;
  frame_count: number;
  seed: number;
  missing_frames?: number[];
}

// rough adult proportions, +z up, pelvis near one meter
const REST_POSE: ReadonlyArray<Triple> = [
  [0.0, 0.0, 1.0],
  [-0.13, 0.0, 0.97], [-0.15, 0.02, 0.52], [-0.16, 0.03, 0.08],
  [0.13, 0.0, 0.97], [0.15, 0.02, 0.52], [0.16, 0.03, 0.08],
  [0.0, 0.02, 1.25], [0.0, 0.03, 1.48], [0.0, 0.02, 1.57], [0.0, 0.01, 1.71],
  [0.2, 0.02, 1.45], [0.45, 0.05, 1.38], [0.65, 0.15, 1.3],
  [-0.2, 0.02, 1.45], [-0.45, 0.05, 1.38], [-0.65, 0.15, 1.3],
];

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function identityJointMap(): JointMap {
  const map = {} as JointMap;
  CANONICAL_JOINTS.forEach((joint: CanonicalJoint, index: number) => {
    map[joint] = { kind: "index", index };
  });
  return map;
}

export function readFakeVideo(videoPath: string): FakeVideoDescriptor {
  let text: string;
  try {
    text = readFileSync(videoPath, "utf-8");
  } catch (err) {
    throw new ExtractionFailedError(`unreadable video '${videoPath}': ${String(err)}`);
  }
  let parsed: unknown;
  try {
    parsed = JSON.parse(text);
  } catch (err) {
    throw new AdapterValidationError(`'${videoPath}' is not a fake-video descriptor: ${String(err)}`);
  }
  const doc = parsed as FakeVideoDescriptor;
  if (doc.kind !== FAKE_VIDEO_KIND) {
    throw new AdapterValidationError(
      `'${videoPath}' has kind '${String(doc.kind)}', expected '${FAKE_VIDEO_KIND}'`,
    );
  }
  if (!(Number.isFinite(doc.fps) && doc.fps > 0)) {
    throw new AdapterValidationError(`fake video fps must be positive, got ${String(doc.fps)}`);
  }
  if (!(Number.isInteger(doc.frame_count) && doc.frame_count >= 1)) {
    throw new AdapterValidationError(`fake video frame_count must be >= 1, got ${String(doc.frame_count)}`);
  }
  if (!Number.isInteger(doc.seed)) {
    throw new AdapterValidationError(`fake video seed must be an integer, got ${String(doc.seed)}`);
  }
  return doc;
}

export class FakeBackend implements EstimatorBackend {
  readonly name = "fake";
  readonly jointMap = identityJointMap();

  async extract(videoPath: string): Promise<BackendResult> {
    const video = readFakeVideo(videoPath);
    const missing = new Set(video.missing_frames ?? []);
    const rand = mulberry32(video.seed);
    const frames = [];
    for (let f = 0; f < video.frame_count; f += 1) {
      const t = f / video.fps;
      const landmarks: Triple[] = REST_POSE.map((rest, j) => {
        const wobble = 0.08 * Math.sin(2 * Math.PI * 0.8 * t + (j * Math.PI) / 7);
        return [
          rest[0] + wobble + 0.002 * (rand() - 0.5),
          rest[1] + 0.5 * wobble + 0.002 * (rand() - 0.5),
          rest[2] + 0.25 * wobble + 0.002 * (rand() - 0.5),
        ] as Triple;
      });
      frames.push(missing.has(f) ? null : landmarks);
    }
    return { fps: video.fps, landmarkCount: CANONICAL_JOINTS.length, frames };
  }
}
