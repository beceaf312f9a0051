#!/usr/bin/env node
/**
 * poze-extract: convert estimator output into canonical poze-seq/1 files.
 *
 *   poze-extract extract --video PATH --out PATH [--stride N] [--backend NAME]
 *   poze-extract selfcheck [--out PATH]
 *   poze-extract backends
 *
 * Exit codes match the core package convention: 0 success, 1 runtime
 * failure (unreadable input, backend/extraction failure), 2 usage or
 * validation failure.
 */

import { parseArgs } from "node:util";

import { registerDefaultBackends } from "./index.js";
import { listBackends } from "./backends/registry.js";
import { AdapterValidationError } from "./errors.js";
import { extract } from "./extract.js";
import { selfcheck } from "./selfcheck.js";

function usage(): string {
  return [
    "usage:",
    "  poze-extract extract --video PATH --out PATH [--stride N] [--backend NAME]",
    "  poze-extract selfcheck [--out PATH]",
    "  poze-extract backends",
  ].join("\n");
}

async function runExtract(argv: string[]): Promise<number> {
  const { values } = parseArgs({
    args: argv,
    options: {
      video: { type: "string" },
      out: { type: "string" },
      stride: { type: "string", default: "1" },
      backend: { type: "string", default: "fake" },
    },
  });
  if (!values.video || !values.out) {
    process.stderr.write("error: --video and --out are required\n" + usage() + "\n");
    return 2;
  }
  const stride = Number(values.stride);
  const file = await extract({
    backend: values.backend ?? "fake",
    video: values.video,
    out: values.out,
    stride,
  });
  process.stdout.write(
    `wrote ${values.out}: ${file.frames.length} frames, ${file.joint_count} joints, ` +
    `${file.fps} fps (backend ${values.backend}, stride ${stride})\n`,
  );
  return 0;
}

async function runSelfcheck(argv: string[]): Promise<number> {
  const { values } = parseArgs({
    args: argv,
    options: { out: { type: "string" } },
  });
  const report = await selfcheck(values.out);
  for (const backend of report.backends) {
    process.stdout.write(
      `backend ${backend.name}: ${backend.available ? "available" : `UNAVAILABLE (${backend.error})`}\n`,
    );
  }
  process.stdout.write(
    `synthetic sequence: ${report.wrote} (${report.frames} frames, ` +
    `${report.valid ? "valid" : "INVALID"})\n`,
  );
  return report.valid && report.backends.every((b) => b.available) ? 0 : 1;
}

async function main(): Promise<number> {
  registerDefaultBackends();
  const [command, ...rest] = process.argv.slice(2);
  try {
    switch (command) {
      case "extract":
        return await runExtract(rest);
      case "selfcheck":
        return await runSelfcheck(rest);
      case "backends":
        process.stdout.write(listBackends().join("\n") + "\n");
        return 0;
      default:
        process.stderr.write(usage() + "\n");
        return 2;
    }
  } catch (err) {
    if (err instanceof AdapterValidationError) {
      process.stderr.write(`error: ${err.message}\n`);
      for (const violation of err.violations) {
        process.stderr.write(`  [${violation.code}] ${violation.path}: ${violation.message}\n`);
      }
      return 2;
    }
    process.stderr.write(`error: ${String(err instanceof Error ? err.message : err)}\n`);
    return 1;
  }
}

main().then((code) => {
  process.exitCode = code;
});
