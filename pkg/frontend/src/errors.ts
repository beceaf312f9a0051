export interface Violation {
  code: string;
  path: string;
  message: string;
  frame?: number;
  joint?: number;
}

/** Input or config problem; maps to exit code 2 in the CLI. */
export class AdapterValidationError extends Error {
  readonly violations: Violation[];

  constructor(message: string, violations: Violation[] = []) {
    super(message);
    this.name = "AdapterValidationError";
    this.violations = violations;
  }
}

/** Extraction could not produce a usable sequence; carries diagnostics. */
export class ExtractionFailedError extends Error {
  readonly diagnostics: Record<string, number | string>;

  constructor(message: string, diagnostics: Record<string, number | string> = {}) {
    super(message);
    this.name = "ExtractionFailedError";
    this.diagnostics = diagnostics;
  }
}
