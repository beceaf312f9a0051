/**
 * Reference backend for BlazePose-family estimators (33 world landmarks, as
 * produced by MediaPipe PoseLandmarker in the browser or on device).
 *
 * Extraction runs where the model runs; this backend consumes the landmark
 * dump such a capture page saves (blazepose-landmarks/1) and owns the
 * 33 -> 17 canonical remap. Derived joints are explicit averages: pelvis is
 * the hip midpoint, thorax the shoulder midpoint, spine the average of both
 * pairs; neck maps to the nose landmark and head to the ear midpoint, the
 * usual convention when a model has no dedicated neck/head-top points.
 *
 * Dump format (blazepose-landmarks/1):
 *   { "kind": "blazepose-landmarks/1", "fps": 30,
 *     "frames": [ [[x,y,z] x33] | null, ... ] }
 */

import { readFileSync } from "node:fs";

import { AdapterValidationError, ExtractionFailedError } from "../errors.js";
import { Triple } from "../sequenceFile.js";
import { BackendResult, EstimatorBackend, JointMap } from "./types.js";

export const BLAZEPOSE_DUMP_KIND = "blazepose-landmarks/1";
export const BLAZEPOSE_LANDMARK_COUNT = 33;

// BlazePose landmark indices used by the remap
const NOSE = 0;
const LEFT_EAR = 7;
const RIGHT_EAR = 8;
const LEFT_SHOULDER = 11;
const RIGHT_SHOULDER = 12;
const LEFT_ELBOW = 13;
const RIGHT_ELBOW = 14;
const LEFT_WRIST = 15;
const RIGHT_WRIST = 16;
const LEFT_HIP = 23;
const RIGHT_HIP = 24;
const LEFT_KNEE = 25;
const RIGHT_KNEE = 26;
const LEFT_ANKLE = 27;
const RIGHT_ANKLE = 28;

export const BLAZEPOSE_JOINT_MAP: JointMap = {
  pelvis: { kind: "average", indices: [LEFT_HIP, RIGHT_HIP] },
  right_hip: { kind: "index", index: RIGHT_HIP },
  right_knee: { kind: "index", index: RIGHT_KNEE },
  right_ankle: { kind: "index", index: RIGHT_ANKLE },
  left_hip: { kind: "index", index: LEFT_HIP },
  left_knee: { kind: "index", index: LEFT_KNEE },
  left_ankle: { kind: "index", index: LEFT_ANKLE },
  spine: { kind: "average", indices: [LEFT_SHOULDER, RIGHT_SHOULDER, LEFT_HIP, RIGHT_HIP] },
  thorax: { kind: "average", indices: [LEFT_SHOULDER, RIGHT_SHOULDER] },
  neck: { kind: "index", index: NOSE },
  head: { kind: "average", indices: [LEFT_EAR, RIGHT_EAR] },
  left_shoulder: { kind: "index", index: LEFT_SHOULDER },
  left_elbow: { kind: "index", index: LEFT_ELBOW },
  left_wrist: { kind: "index", index: LEFT_WRIST },
  right_shoulder: { kind: "index", index: RIGHT_SHOULDER },
  right_elbow: { kind: "index", index: RIGHT_ELBOW },
  right_wrist: { kind: "index", index: RIGHT_WRIST },
};

interface BlazePoseDump {
  kind: string;
  fps: number;
  frames: (Triple[] | null)[];
}

export class BlazePoseBackend implements EstimatorBackend {
  readonly name = "blazepose";
  readonly jointMap = BLAZEPOSE_JOINT_MAP;

  async extract(videoPath: string): Promise<BackendResult> {
    let text: string;
    try {
      text = readFileSync(videoPath, "utf-8");
    } catch (err) {
      throw new ExtractionFailedError(`unreadable input '${videoPath}': ${String(err)}`);
    }
    let parsed: unknown;
    try {
      parsed = JSON.parse(text);
    } catch (err) {
      throw new AdapterValidationError(
        `'${videoPath}' is not a landmark dump: ${String(err)}`,
      );
    }
    const dump = parsed as BlazePoseDump;
    if (dump.kind !== BLAZEPOSE_DUMP_KIND) {
      throw new AdapterValidationError(
        `'${videoPath}' has kind '${String(dump.kind)}', expected '${BLAZEPOSE_DUMP_KIND}'`,
      );
    }
    if (!(Number.isFinite(dump.fps) && dump.fps > 0)) {
      throw new AdapterValidationError(`dump fps must be positive, got ${String(dump.fps)}`);
    }
    if (!Array.isArray(dump.frames)) {
      throw new AdapterValidationError(`dump frames must be an array`);
    }
    return {
      fps: dump.fps,
      landmarkCount: BLAZEPOSE_LANDMARK_COUNT,
      frames: dump.frames,
    };
  }
}
