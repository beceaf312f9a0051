/**
 * Golden contract with the core package: every file this adapter emits must
 * pass the core validator with zero violations. The check shells out to the
 * primary CLI (`poze inspect`), i.e. it exercises the real external
 * interface; it skips only when the primary is not installed on this machine.
 */

import { execFileSync } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import { extract, registerDefaultBackends } from "../src/index.js";

const SAMPLE = join(__dirname, "fixtures", "sample.fakevid.json");
const DUMP = join(__dirname, "fixtures", "short.blazepose.json");

function pozeAvailable(): boolean {
  try {
    execFileSync("poze", ["--version"], { encoding: "utf-8" });
    return true;
  } catch {
    return false;
  }
}

beforeAll(() => {
  registerDefaultBackends();
});

describe.skipIf(!pozeAvailable())("golden contract with the core package", () => {
  it("fake-backend output passes `poze inspect`", async () => {
    const dir = mkdtempSync(join(tmpdir(), "poze-golden-"));
    const out = join(dir, "fake.json");
    await extract({ backend: "fake", video: SAMPLE, out });
    const stdout = execFileSync("poze", ["inspect", out], { encoding: "utf-8" });
    expect(stdout).toContain("valid");
    expect(stdout).toContain("17 joints");
  });

  it("blazepose-backend output passes `poze inspect`", async () => {
    const dir = mkdtempSync(join(tmpdir(), "poze-golden-"));
    const out = join(dir, "blazepose.json");
    await extract({ backend: "blazepose", video: DUMP, out });
    const stdout = execFileSync("poze", ["inspect", out], { encoding: "utf-8" });
    expect(stdout).toContain("valid");
  });
});
