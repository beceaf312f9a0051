import { registerBackend } from "./backends/registry.js";
import { BlazePoseBackend } from "./backends/blazepose.js";
import { FakeBackend } from "./backends/fake.js";

let registered = false;

/** Register the shipped backends (idempotent). */
export function registerDefaultBackends(): void {
  if (registered) return;
  registerBackend("fake", () => new FakeBackend());
  registerBackend("blazepose", () => new BlazePoseBackend());
  registered = true;
}

export { AdapterConfig, extract, remapFrame } from "./extract.js";
export { selfcheck, SelfcheckReport } from "./selfcheck.js";
export { getBackend, listBackends, registerBackend } from "./backends/registry.js";
export { EstimatorBackend, JointMap, JointSource, BackendResult, RawFrame } from "./backends/types.js";
export { FakeBackend, FAKE_VIDEO_KIND } from "./backends/fake.js";
export { BlazePoseBackend, BLAZEPOSE_JOINT_MAP, BLAZEPOSE_DUMP_KIND } from "./backends/blazepose.js";
export {
  PozeSequenceFile,
  SEQUENCE_SCHEMA_VERSION,
  Triple,
  makeSequenceFile,
  serializeSequence,
  validateSequenceRecord,
  writeSequenceFile,
} from "./sequenceFile.js";
export { CANONICAL_JOINTS, CanonicalJoint, JOINT_COUNT, SKELETON_EDGES } from "./skeleton.js";
export { AdapterValidationError, ExtractionFailedError, Violation } from "./errors.js";
export { PozeClient, FetchLike, ValidateResult, ClassifyResult } from "./client.js";
