"""Class-imbalance-aware evaluation over dataset manifests.

Each (technique, attribute) group trains a model on its train/good entries
and classifies its test entries; the group metric is balanced accuracy (mean
of the per-class recalls), which is invariant to duplicating all entries of
one class. The overall score is the mean of group balanced accuracies.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import ClassifierParams, feedback
from .dtw import DtwConfig
from .errors import PozeError, ValidationError
from .manifest import DatasetManifest
from .model import DEFAULT_SIGMA_FLOOR, build_model
from .normalize import NormalizationConfig, normalize_sequence
from .sequence import load_sequence

EVAL_SCHEMA_VERSION = "poze-eval/1"


@dataclass(frozen=True)
class GroupResult:
    """Confusion counts and recalls for one (technique, attribute) group.

    The confusion matrix rows are the true label (good, bad), columns the
    predicted verdict (Good, Bad).
    """

    technique: str
    attribute: str
    confusion: tuple[tuple[int, int], tuple[int, int]]
    recall_good: float | None
    recall_bad: float | None
    balanced_accuracy: float

    @property
    def test_count(self) -> int:
        return sum(self.confusion[0]) + sum(self.confusion[1])


@dataclass(frozen=True)
class EvalResult:
    groups: tuple[GroupResult, ...]
    skipped: tuple[tuple[str, str, str], ...]
    mean_balanced_accuracy: float


def group_result_from_counts(technique: str, attribute: str,
                             good_pred_good: int, good_pred_bad: int,
                             bad_pred_good: int, bad_pred_bad: int) -> GroupResult:
    """Metric arithmetic, exposed separately so it can be checked directly."""
    n_good = good_pred_good + good_pred_bad
    n_bad = bad_pred_good + bad_pred_bad
    if n_good + n_bad == 0:
        raise ValidationError(f"group {(technique, attribute)} has no test entries")
    recall_good = good_pred_good / n_good if n_good else None
    recall_bad = bad_pred_bad / n_bad if n_bad else None
    recalls = [r for r in (recall_good, recall_bad) if r is not None]
    acc = 0.0
    for r in recalls:
        acc += r
    return GroupResult(
        technique=technique,
        attribute=attribute,
        confusion=((good_pred_good, good_pred_bad), (bad_pred_good, bad_pred_bad)),
        recall_good=recall_good,
        recall_bad=recall_bad,
        balanced_accuracy=acc / len(recalls),
    )


def evaluate(manifest: DatasetManifest,
             norm_cfg: NormalizationConfig = NormalizationConfig(),
             dtw_cfg: DtwConfig = DtwConfig(),
             params: ClassifierParams = ClassifierParams(),
             pair_normalizer: str = "paper",
             sigma_floor: float = DEFAULT_SIGMA_FLOOR,
             threads: int = 1) -> EvalResult:
    """Train and score every manifest group; groups that cannot train are skipped.

    Groups evaluate in lexicographic (technique, attribute) order, so the
    aggregation order (and therefore every float) is deterministic.
    """
    groups: list[GroupResult] = []
    skipped: list[tuple[str, str, str]] = []
    for (technique, attribute), entries in manifest.groups().items():
        train_good = [e for e in entries if e.split == "train" and e.label == "good"]
        tests = [e for e in entries if e.split == "test"]
        if len(train_good) < 2:
            skipped.append((technique, attribute,
                            f"only {len(train_good)} train/good entries, need >= 2"))
            continue
        if not tests:
            skipped.append((technique, attribute, "no test entries"))
            continue
        try:
            exemplars = [load_sequence(manifest.resolve(e)) for e in train_good]
            model = build_model(
                exemplars, technique, attribute, norm_cfg, dtw_cfg,
                pair_normalizer=pair_normalizer, sigma_floor=sigma_floor, threads=threads,
            )
            # normalize the exemplars once; feedback() reuses them as-is
            normalized = [normalize_sequence(s, norm_cfg) for s in
                          sorted(exemplars, key=lambda s: s.source_id)]
            counts = {("good", "Good"): 0, ("good", "Bad"): 0,
                      ("bad", "Good"): 0, ("bad", "Bad"): 0}
            for entry in tests:
                seq = load_sequence(manifest.resolve(entry))
                report = feedback(seq, model, normalized, params, threads=threads)
                counts[(entry.label, report.verdict)] += 1
        except PozeError as exc:
            skipped.append((technique, attribute, str(exc)))
            continue
        groups.append(group_result_from_counts(
            technique, attribute,
            counts[("good", "Good")], counts[("good", "Bad")],
            counts[("bad", "Good")], counts[("bad", "Bad")],
        ))
    if not groups:
        raise ValidationError("no group could be evaluated", [])
    acc = 0.0
    for g in groups:
        acc += g.balanced_accuracy
    return EvalResult(
        groups=tuple(groups),
        skipped=tuple(skipped),
        mean_balanced_accuracy=acc / len(groups),
    )


def eval_to_record(result: EvalResult, params: ClassifierParams,
                   pair_normalizer: str) -> dict:
    return {
        "schema_version": EVAL_SCHEMA_VERSION,
        "params_used": params.to_record(),
        "pair_normalizer": pair_normalizer,
        "groups": [
            {
                "technique": g.technique,
                "attribute": g.attribute,
                "confusion": [list(row) for row in g.confusion],
                "recall_good": g.recall_good,
                "recall_bad": g.recall_bad,
                "balanced_accuracy": g.balanced_accuracy,
            }
            for g in result.groups
        ],
        "skipped": [
            {"technique": t, "attribute": a, "reason": r} for t, a, r in result.skipped
        ],
        "mean_balanced_accuracy": result.mean_balanced_accuracy,
    }


def render_eval_table(result: EvalResult) -> str:
    header = f"{'technique':<16} {'attribute':<16} {'tests':>5} {'r_good':>7} {'r_bad':>7} {'bal_acc':>8}"
    lines = [header, "-" * len(header)]
    for g in result.groups:
        rg = "-" if g.recall_good is None else f"{g.recall_good:.3f}"
        rb = "-" if g.recall_bad is None else f"{g.recall_bad:.3f}"
        lines.append(
            f"{g.technique:<16} {g.attribute:<16} {g.test_count:>5} {rg:>7} {rb:>7} "
            f"{g.balanced_accuracy:>8.4f}"
        )
    for technique, attribute, reason in result.skipped:
        lines.append(f"{technique:<16} {attribute:<16} skipped: {reason}")
    lines.append(f"mean balanced accuracy: {result.mean_balanced_accuracy:.4f}")
    return "\n".join(lines)
