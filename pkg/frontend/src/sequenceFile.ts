/**
 * Writer and validator for poze-seq/1 documents.
 *
 * JSON.stringify emits the shortest decimal that parses back to the identical
 * double, which is exactly the format's round-trip rule; the validator mirrors
 * the core package's machine-readable violation codes so problems are caught
 * before a file ever crosses the component boundary.
 */

import { writeFileSync } from "node:fs";

import { Violation } from "./errors.js";
import { CANONICAL_JOINTS } from "./skeleton.js";

export const SEQUENCE_SCHEMA_VERSION = "poze-seq/1";

export type Triple = readonly [number, number, number];

export interface PozeSequenceFile {
  schema_version: typeof SEQUENCE_SCHEMA_VERSION;
  source_id: string;
  fps: number;
  joint_count: number;
  joint_names: string[];
  normalized: boolean;
  frames: Triple[][];
}

export function makeSequenceFile(
  sourceId: string,
  fps: number,
  frames: Triple[][],
): PozeSequenceFile {
  return {
    schema_version: SEQUENCE_SCHEMA_VERSION,
    source_id: sourceId,
    fps,
    joint_count: CANONICAL_JOINTS.length,
    joint_names: [...CANONICAL_JOINTS],
    normalized: false,
    frames,
  };
}

export function validateSequenceRecord(record: unknown): Violation[] {
  if (typeof record !== "object" || record === null || Array.isArray(record)) {
    return [{ code: "wrong-type", path: "$", message: "document must be a JSON object" }];
  }
  const doc = record as Record<string, unknown>;
  const violations: Violation[] = [];
  const require = (field: string, ok: boolean) => {
    if (!(field in doc)) {
      violations.push({ code: "missing-field", path: field, message: `required field '${field}' missing` });
    } else if (!ok) {
      violations.push({ code: "wrong-type", path: field, message: `field '${field}' has wrong type` });
    }
  };
  require("schema_version", typeof doc.schema_version === "string");
  require("source_id", typeof doc.source_id === "string");
  require("fps", typeof doc.fps === "number");
  require("joint_count", typeof doc.joint_count === "number" && Number.isInteger(doc.joint_count));
  require("joint_names", Array.isArray(doc.joint_names));
  require("normalized", typeof doc.normalized === "boolean");
  require("frames", Array.isArray(doc.frames));
  if (violations.length > 0) return violations;

  if (doc.schema_version !== SEQUENCE_SCHEMA_VERSION) {
    return [{
      code: "bad-schema-version",
      path: "schema_version",
      message: `expected '${SEQUENCE_SCHEMA_VERSION}', got '${String(doc.schema_version)}'`,
    }];
  }
  const jointCount = doc.joint_count as number;
  const names = doc.joint_names as unknown[];
  const frames = doc.frames as unknown[];
  if (jointCount < 1) {
    violations.push({ code: "bad-joint-count", path: "joint_count", message: `got ${jointCount}` });
  }
  if (!(Number.isFinite(doc.fps) && (doc.fps as number) > 0)) {
    violations.push({ code: "nonpositive-fps", path: "fps", message: `got ${String(doc.fps)}` });
  }
  if (names.length !== jointCount || names.some((n) => typeof n !== "string")) {
    violations.push({
      code: "joint-names-mismatch",
      path: "joint_names",
      message: `expected ${jointCount} string names, got ${names.length} entries`,
    });
  } else if (new Set(names).size !== names.length) {
    violations.push({ code: "duplicate-joint-name", path: "joint_names", message: "joint names must be unique" });
  }
  if (frames.length < 2) {
    violations.push({ code: "too-few-frames", path: "frames", message: `got ${frames.length} frames, need >= 2` });
  }
  frames.forEach((frame, f) => {
    if (!Array.isArray(frame)) {
      violations.push({ code: "wrong-type", path: `frames[${f}]`, message: "frame must be an array", frame: f });
      return;
    }
    if (frame.length !== jointCount) {
      violations.push({
        code: "joint-count-mismatch",
        path: `frames[${f}]`,
        message: `frame ${f} has ${frame.length} joints, expected ${jointCount}`,
        frame: f,
      });
      return;
    }
    frame.forEach((triple: unknown, j: number) => {
      if (!Array.isArray(triple) || triple.length !== 3) {
        violations.push({
          code: "bad-triple",
          path: `frames[${f}][${j}]`,
          message: "joint coordinate must be an [x, y, z] array",
          frame: f,
          joint: j,
        });
        return;
      }
      triple.forEach((value: unknown, axis: number) => {
        if (typeof value !== "number") {
          violations.push({
            code: "wrong-type",
            path: `frames[${f}][${j}][${axis}]`,
            message: "coordinate must be a number",
            frame: f,
            joint: j,
          });
        } else if (!Number.isFinite(value)) {
          violations.push({
            code: "non-finite-coordinate",
            path: `frames[${f}][${j}][${axis}]`,
            message: `coordinate is not finite at frame ${f} joint ${j}`,
            frame: f,
            joint: j,
          });
        }
      });
    });
  });
  return violations;
}

export function serializeSequence(file: PozeSequenceFile): string {
  // JSON.stringify(-0) would emit "0", which parses back to +0; canonicalize
  // the sign up front so every written decimal round-trips bit-exactly
  const canonical = (_key: string, value: unknown) =>
    Object.is(value, -0) ? 0 : value;
  return JSON.stringify(file, canonical) + "\n";
}

export function writeSequenceFile(file: PozeSequenceFile, path: string): void {
  writeFileSync(path, serializeSequence(file), "utf-8");
}
