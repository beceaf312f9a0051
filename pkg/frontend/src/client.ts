/**
 * Minimal client for the poze HTTP service: push an extracted sequence for
 * server-side validation or scoring. The fetch implementation is injectable
 * for tests and non-browser runtimes.
 */

import { PozeSequenceFile } from "./sequenceFile.js";
import { Violation } from "./errors.js";

export type FetchLike = (url: string, init: {
  method: string;
  headers: Record<string, string>;
  body: string;
}) => Promise<{ status: number; json(): Promise<unknown> }>;

export interface ValidateResult {
  valid: boolean;
  violations: Violation[];
}

export interface ClassifyResult {
  verdict: "Good" | "Bad";
  pass_fraction: number;
  z: number[];
  joint_bins: string[];
  [key: string]: unknown;
}

async function post(
  fetchImpl: FetchLike,
  server: string,
  route: string,
  payload: unknown,
): Promise<unknown> {
  const response = await fetchImpl(server.replace(/\/+$/, "") + route, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(payload),
  });
  const body = await response.json();
  if (response.status >= 400 && response.status !== 422) {
    throw new Error(`poze service error ${response.status}: ${JSON.stringify(body)}`);
  }
  return body;
}

export class PozeClient {
  private readonly fetchImpl: FetchLike;

  constructor(
    private readonly server: string,
    fetchImpl?: FetchLike,
  ) {
    this.fetchImpl = fetchImpl ?? (fetch as unknown as FetchLike);
  }

  async validateSequence(sequence: PozeSequenceFile): Promise<ValidateResult> {
    const body = await post(this.fetchImpl, this.server, "/sequences/validate", sequence);
    return body as ValidateResult;
  }

  async classifyRegistered(
    modelName: string,
    sequence: PozeSequenceFile,
    params?: { tau?: number; theta?: number },
  ): Promise<ClassifyResult> {
    const payload = params ? { sequence, params } : { sequence };
    const body = await post(
      this.fetchImpl,
      this.server,
      `/registry/models/${encodeURIComponent(modelName)}/classify`,
      payload,
    );
    if ((body as { detail?: unknown }).detail !== undefined) {
      throw new Error(`poze service rejected sequence: ${JSON.stringify(body)}`);
    }
    return body as ClassifyResult;
  }
}
