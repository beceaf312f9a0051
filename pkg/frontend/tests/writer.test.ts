import { describe, expect, it } from "vitest";

import {
  JOINT_COUNT,
  SKELETON_EDGES,
  Triple,
  makeSequenceFile,
  serializeSequence,
  validateSequenceRecord,
} from "../src/index.js";

function triple(v: number): Triple {
  return [v, v, v];
}

function frames(n: number, value = 0.5): Triple[][] {
  return Array.from({ length: n }, () => Array.from({ length: JOINT_COUNT }, () => triple(value)));
}

describe("sequence writer", () => {
  it("round-trips awkward doubles bit-exactly", () => {
    const values = [0.1, 1 / 3, 1e-300, 1e300, 2 ** -1074, 0.30000000000000004];
    const file = makeSequenceFile("rt", 29.97, frames(2));
    values.forEach((v, k) => {
      file.frames[0]![k]![0 as never] = v as never;
    });
    const reread = JSON.parse(serializeSequence(file));
    values.forEach((v, k) => {
      expect(Object.is(reread.frames[0][k][0], v)).toBe(true);
    });
    expect(reread.fps).toBe(29.97);
  });

  it("canonicalizes negative zero so output still round-trips", () => {
    // JSON.stringify would write -0 as "0"; the writer normalizes the sign
    // itself so the emitted decimal parses back to the written value
    const file = makeSequenceFile("zero", 30, frames(2));
    file.frames[0]![0]![0 as never] = -0 as never;
    const reread = JSON.parse(serializeSequence(file));
    expect(Object.is(reread.frames[0][0][0], 0)).toBe(true);
  });

  it("builds canonical headers", () => {
    const file = makeSequenceFile("clip", 30, frames(3));
    expect(file.schema_version).toBe("poze-seq/1");
    expect(file.joint_count).toBe(17);
    expect(file.joint_names).toHaveLength(17);
    expect(file.normalized).toBe(false);
    expect(SKELETON_EDGES).toHaveLength(16);
  });
});

describe("sequence validator", () => {
  it("accepts a well-formed record", () => {
    expect(validateSequenceRecord(makeSequenceFile("ok", 30, frames(2)))).toEqual([]);
  });

  it("reports the machine-readable codes the core package uses", () => {
    const base = makeSequenceFile("bad", 30, frames(3));

    const oneFrame = { ...base, frames: base.frames.slice(0, 1) };
    expect(validateSequenceRecord(oneFrame).map((v) => v.code)).toContain("too-few-frames");

    const zeroFps = { ...base, fps: 0 };
    expect(validateSequenceRecord(zeroFps).map((v) => v.code)).toContain("nonpositive-fps");

    const wrongVersion = { ...base, schema_version: "poze-seq/9" };
    expect(validateSequenceRecord(wrongVersion).map((v) => v.code)).toEqual(["bad-schema-version"]);

    const shortFrame = {
      ...base,
      frames: [base.frames[0], base.frames[1]!.slice(0, 16)],
    };
    const shortViolations = validateSequenceRecord(shortFrame);
    expect(shortViolations.some((v) => v.code === "joint-count-mismatch" && v.frame === 1)).toBe(true);

    const nan = makeSequenceFile("nan", 30, frames(2));
    nan.frames[1]![12]![1 as never] = Number.NaN as never;
    const nanViolations = validateSequenceRecord(nan);
    expect(nanViolations.some(
      (v) => v.code === "non-finite-coordinate" && v.frame === 1 && v.joint === 12,
    )).toBe(true);

    expect(validateSequenceRecord(null)[0]?.code).toBe("wrong-type");
    expect(validateSequenceRecord({})[0]?.code).toBe("missing-field");
  });
});
