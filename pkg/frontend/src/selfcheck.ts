/**
 * Self-diagnosis: confirm every registered backend constructs with a total
 * joint map, then exercise the writer end to end with the fake backend (no
 * model download, no video decode) and validate the emitted file.
 */

import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { getBackend, listBackends } from "./backends/registry.js";
import { FAKE_VIDEO_KIND } from "./backends/fake.js";
import { extract } from "./extract.js";
import { validateSequenceRecord } from "./sequenceFile.js";

export interface SelfcheckReport {
  backends: { name: string; available: boolean; error?: string }[];
  wrote: string;
  frames: number;
  valid: boolean;
}

export async function selfcheck(outPath?: string): Promise<SelfcheckReport> {
  const backends = listBackends().map((name) => {
    try {
      getBackend(name);
      return { name, available: true };
    } catch (err) {
      return { name, available: false, error: String(err) };
    }
  });

  const workdir = mkdtempSync(join(tmpdir(), "poze-selfcheck-"));
  const videoPath = join(workdir, "synthetic.fakevid.json");
  writeFileSync(videoPath, JSON.stringify({
    kind: FAKE_VIDEO_KIND, fps: 30, frame_count: 24, seed: 1,
  }));
  const target = outPath ?? join(workdir, "synthetic.poze-seq.json");
  const file = await extract({ backend: "fake", video: videoPath, out: target });
  const reread = JSON.parse(readFileSync(target, "utf-8")) as unknown;
  return {
    backends,
    wrote: target,
    frames: file.frames.length,
    valid: validateSequenceRecord(reread).length === 0,
  };
}
