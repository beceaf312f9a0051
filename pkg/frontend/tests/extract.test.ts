import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import {
  AdapterValidationError,
  ExtractionFailedError,
  FAKE_VIDEO_KIND,
  extract,
  registerDefaultBackends,
  validateSequenceRecord,
} from "../src/index.js";

const FIXTURES = join(__dirname, "fixtures");
const SAMPLE = join(FIXTURES, "sample.fakevid.json");

beforeAll(() => {
  registerDefaultBackends();
});

function workdir(): string {
  return mkdtempSync(join(tmpdir(), "poze-extract-test-"));
}

function fakeVideo(dir: string, overrides: Record<string, unknown> = {}): string {
  const path = join(dir, "clip.fakevid.json");
  writeFileSync(path, JSON.stringify({
    kind: FAKE_VIDEO_KIND, fps: 30, frame_count: 40, seed: 7, ...overrides,
  }));
  return path;
}

describe("extract with the fake backend", () => {
  it("emits a schema-valid file for the sample clip", async () => {
    const dir = workdir();
    const out = join(dir, "clip.json");
    const file = await extract({ backend: "fake", video: SAMPLE, out });
    expect(file.joint_count).toBe(17);
    expect(file.joint_names[0]).toBe("pelvis");
    expect(file.normalized).toBe(false);
    expect(file.fps).toBe(30);
    expect(file.frames).toHaveLength(40);
    const reread = JSON.parse(readFileSync(out, "utf-8"));
    expect(validateSequenceRecord(reread)).toEqual([]);
  });

  it("is deterministic: same descriptor, identical bytes", async () => {
    const dir = workdir();
    await extract({ backend: "fake", video: SAMPLE, out: join(dir, "a.json") });
    await extract({ backend: "fake", video: SAMPLE, out: join(dir, "b.json") });
    expect(readFileSync(join(dir, "a.json"), "utf-8"))
      .toBe(readFileSync(join(dir, "b.json"), "utf-8"));
  });

  it("halves fps and frame count with stride 2", async () => {
    const dir = workdir();
    const base = await extract({ backend: "fake", video: SAMPLE, out: join(dir, "s1.json") });
    const strided = await extract({
      backend: "fake", video: SAMPLE, out: join(dir, "s2.json"), stride: 2,
    });
    expect(strided.fps).toBe(base.fps / 2);
    expect(Math.abs(strided.frames.length - base.frames.length / 2)).toBeLessThanOrEqual(1);
  });

  it("divides fps by larger strides too", async () => {
    const dir = workdir();
    const strided = await extract({
      backend: "fake", video: SAMPLE, out: join(dir, "s3.json"), stride: 3,
    });
    expect(strided.fps).toBe(10);
    expect(strided.frames.length).toBe(Math.ceil(40 / 3));
  });

  it("drops undetected frames below the failure threshold", async () => {
    const dir = workdir();
    const video = fakeVideo(dir, { frame_count: 10, missing_frames: [2, 5] });
    const file = await extract({ backend: "fake", video, out: join(dir, "gap.json") });
    expect(file.frames).toHaveLength(8);
  });

  it("fails with diagnostics when half the frames have no person", async () => {
    const dir = workdir();
    const video = fakeVideo(dir, {
      frame_count: 10, missing_frames: [0, 1, 2, 3, 4],
    });
    await expect(extract({ backend: "fake", video, out: join(dir, "x.json") }))
      .rejects.toMatchObject({
        name: "ExtractionFailedError",
        diagnostics: { sampled_frames: 10, missing_frames: 5 },
      });
  });

  it("fails when fewer than two usable frames remain", async () => {
    const dir = workdir();
    const video = fakeVideo(dir, { frame_count: 1 });
    await expect(extract({ backend: "fake", video, out: join(dir, "x.json") }))
      .rejects.toBeInstanceOf(ExtractionFailedError);
  });

  it("rejects unreadable videos", async () => {
    const dir = workdir();
    await expect(extract({
      backend: "fake", video: join(dir, "missing.fakevid.json"), out: join(dir, "x.json"),
    })).rejects.toBeInstanceOf(ExtractionFailedError);
  });

  it("rejects descriptors of the wrong kind", async () => {
    const dir = workdir();
    const video = join(dir, "bogus.json");
    writeFileSync(video, JSON.stringify({ kind: "mp4-but-not-really" }));
    await expect(extract({ backend: "fake", video, out: join(dir, "x.json") }))
      .rejects.toBeInstanceOf(AdapterValidationError);
  });

  it("rejects bad strides and unknown backends", async () => {
    const dir = workdir();
    await expect(extract({ backend: "fake", video: SAMPLE, out: join(dir, "x.json"), stride: 0 }))
      .rejects.toBeInstanceOf(AdapterValidationError);
    await expect(extract({ backend: "imaginary", video: SAMPLE, out: join(dir, "x.json") }))
      .rejects.toThrow(/unknown backend 'imaginary'.*fake/);
  });
});
