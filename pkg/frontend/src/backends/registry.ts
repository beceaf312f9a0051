import { AdapterValidationError } from "../errors.js";
import { CANONICAL_JOINTS } from "../skeleton.js";
import { EstimatorBackend } from "./types.js";

const backends = new Map<string, () => EstimatorBackend>();

export function registerBackend(name: string, factory: () => EstimatorBackend): void {
  if (backends.has(name)) {
    throw new AdapterValidationError(`backend '${name}' already registered`);
  }
  backends.set(name, factory);
}

export function getBackend(name: string): EstimatorBackend {
  const factory = backends.get(name);
  if (!factory) {
    throw new AdapterValidationError(
      `unknown backend '${name}' (available: ${listBackends().join(", ")})`,
    );
  }
  const backend = factory();
  // totality check up front so misdeclared backends fail loudly, not per-frame
  for (const joint of CANONICAL_JOINTS) {
    if (!(joint in backend.jointMap)) {
      throw new AdapterValidationError(
        `backend '${name}' joint map missing canonical joint '${joint}'`,
      );
    }
  }
  return backend;
}

export function listBackends(): string[] {
  return [...backends.keys()].sort();
}
