import { existsSync } from "node:fs";

import { beforeAll, describe, expect, it } from "vitest";

import { registerDefaultBackends, selfcheck } from "../src/index.js";

beforeAll(() => {
  registerDefaultBackends();
});

describe("selfcheck", () => {
  it("reports every shipped backend available and writes a valid synthetic file", async () => {
    const report = await selfcheck();
    const names = report.backends.map((b) => b.name);
    expect(names).toContain("fake");
    expect(names).toContain("blazepose");
    expect(report.backends.every((b) => b.available)).toBe(true);
    expect(report.valid).toBe(true);
    expect(report.frames).toBeGreaterThanOrEqual(2);
    expect(existsSync(report.wrote)).toBe(true);
  });
});
