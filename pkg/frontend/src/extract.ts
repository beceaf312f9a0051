/**
 * Extraction core: run a backend over a video, apply the frame stride, remap
 * raw landmarks to the canonical 17-joint order, and emit a poze-seq/1 file.
 *
 * Frames where the backend detected nobody are dropped; if half or more of
 * the sampled frames are missing, extraction fails with diagnostics instead.
 * The adapter never normalizes coordinates — that is the core package's job.
 */

import { basename } from "node:path";

import { getBackend } from "./backends/registry.js";
import { EstimatorBackend, JointSource, RawFrame } from "./backends/types.js";
import { AdapterValidationError, ExtractionFailedError } from "./errors.js";
import {
  PozeSequenceFile,
  Triple,
  makeSequenceFile,
  validateSequenceRecord,
  writeSequenceFile,
} from "./sequenceFile.js";
import { CANONICAL_JOINTS } from "./skeleton.js";

export interface AdapterConfig {
  backend: string;
  video: string;
  out: string;
  stride?: number;
}

function resolveSource(
  source: JointSource,
  landmarks: Triple[],
  joint: string,
  backend: string,
): Triple {
  if (source.kind === "unsupported") {
    throw new ExtractionFailedError(
      `backend '${backend}' does not support canonical joint '${joint}'`,
    );
  }
  if (source.kind === "index") {
    const point = landmarks[source.index];
    if (!point) {
      throw new ExtractionFailedError(
        `backend '${backend}' frame lacks landmark ${source.index} for joint '${joint}'`,
      );
    }
    return point;
  }
  let x = 0;
  let y = 0;
  let z = 0;
  for (const index of source.indices) {
    const point = landmarks[index];
    if (!point) {
      throw new ExtractionFailedError(
        `backend '${backend}' frame lacks landmark ${index} for joint '${joint}'`,
      );
    }
    x += point[0];
    y += point[1];
    z += point[2];
  }
  const n = source.indices.length;
  return [x / n, y / n, z / n];
}

export function remapFrame(backend: EstimatorBackend, landmarks: Triple[]): Triple[] {
  return CANONICAL_JOINTS.map((joint) =>
    resolveSource(backend.jointMap[joint], landmarks, joint, backend.name),
  );
}

export async function extract(config: AdapterConfig): Promise<PozeSequenceFile> {
  const stride = config.stride ?? 1;
  if (!(Number.isInteger(stride) && stride >= 1)) {
    throw new AdapterValidationError(`stride must be an integer >= 1, got ${String(config.stride)}`);
  }
  const backend = getBackend(config.backend);
  const result = await backend.extract(config.video);

  const sampled: RawFrame[] = [];
  for (let f = 0; f < result.frames.length; f += stride) {
    sampled.push(result.frames[f] ?? null);
  }
  const present = sampled.filter((frame): frame is Triple[] => frame !== null);
  const missing = sampled.length - present.length;
  if (sampled.length === 0 || missing * 2 >= sampled.length) {
    throw new ExtractionFailedError(
      `no person detected in ${missing} of ${sampled.length} sampled frames`,
      {
        backend: backend.name,
        sampled_frames: sampled.length,
        missing_frames: missing,
        stride,
      },
    );
  }
  for (const frame of present) {
    if (frame.length !== result.landmarkCount) {
      throw new ExtractionFailedError(
        `backend '${backend.name}' emitted ${frame.length} landmarks, expected ${result.landmarkCount}`,
      );
    }
  }
  const frames = present.map((landmarks) => remapFrame(backend, landmarks));
  if (frames.length < 2) {
    throw new ExtractionFailedError(
      `only ${frames.length} usable frame(s); a sequence needs at least 2`,
      { backend: backend.name, sampled_frames: sampled.length, missing_frames: missing },
    );
  }
  const sourceId = basename(config.video).replace(/\.[^.]*$/, "");
  const file = makeSequenceFile(sourceId, result.fps / stride, frames);

  const violations = validateSequenceRecord(file as unknown);
  if (violations.length > 0) {
    const first = violations[0];
    throw new ExtractionFailedError(
      `emitted sequence would be invalid: [${first?.code}] ${first?.message}`,
      { backend: backend.name, violations: violations.length },
    );
  }
  writeSequenceFile(file, config.out);
  return file;
}
