import pytest

from poze import DatasetManifest, ManifestEntry, SyntheticSpec, ValidationError, evaluate, gen_synthetic
from poze.evaluate import eval_to_record, group_result_from_counts, render_eval_table
from poze.classify import ClassifierParams

LIGHT = SyntheticSpec(exemplars=4, good_tests=4, bad_tests=4, frames=12)


def test_perfect_predictions_metric():
    g = group_result_from_counts("t", "a", 8, 0, 0, 2)
    assert g.balanced_accuracy == 1.0
    assert g.recall_good == 1.0 and g.recall_bad == 1.0
    assert g.test_count == 10


def test_always_good_on_imbalanced_set_scores_half():
    # degenerate classifier: predicts Good for everything, 80/20 imbalance
    g = group_result_from_counts("t", "a", 80, 0, 20, 0)
    assert g.recall_good == 1.0
    assert g.recall_bad == 0.0
    assert g.balanced_accuracy == 0.5


def test_confusion_counts_sum_to_tests():
    g = group_result_from_counts("t", "a", 3, 1, 2, 4)
    assert sum(g.confusion[0]) + sum(g.confusion[1]) == g.test_count == 10
    assert 0.0 <= g.balanced_accuracy <= 1.0


def test_single_class_group_uses_present_recalls():
    g = group_result_from_counts("t", "a", 5, 1, 0, 0)
    assert g.recall_bad is None
    assert g.balanced_accuracy == g.recall_good


def test_duplication_invariance(tmp_path):
    manifest = gen_synthetic(21, LIGHT, tmp_path)
    base = evaluate(manifest)
    duplicated = DatasetManifest(
        entries=manifest.entries + tuple(
            e for e in manifest.entries if e.split == "test" and e.label == "bad"
        ) * 3,
        base_dir=manifest.base_dir,
    )
    doubled = evaluate(duplicated)
    assert doubled.groups[0].balanced_accuracy == base.groups[0].balanced_accuracy


def test_evaluate_deterministic(tmp_path):
    manifest = gen_synthetic(22, LIGHT, tmp_path)
    a = evaluate(manifest)
    b = evaluate(manifest, threads=4)
    assert a.mean_balanced_accuracy == b.mean_balanced_accuracy
    assert a.groups == b.groups


def test_skipped_group_recorded(tmp_path):
    manifest = gen_synthetic(23, LIGHT, tmp_path)
    # second group reuses the test files but has no train entries at all
    orphan_tests = tuple(
        ManifestEntry(e.sequence_path, "other", "attr", e.label, e.split)
        for e in manifest.entries if e.split == "test"
    )
    thin = DatasetManifest(entries=manifest.entries + orphan_tests,
                           base_dir=manifest.base_dir)
    result = evaluate(thin)
    assert any(t == "other" for t, _, _ in result.skipped)
    assert result.groups  # the healthy group still evaluates


def test_no_evaluable_group_raises(tmp_path):
    manifest = gen_synthetic(24, LIGHT, tmp_path)
    only_tests = DatasetManifest(
        entries=tuple(e for e in manifest.entries if e.split == "test"),
        base_dir=manifest.base_dir,
    )
    with pytest.raises(ValidationError):
        evaluate(only_tests)


def test_monotone_difficulty_across_corruption_magnitudes(tmp_path):
    # harder corruption never lowers the expected balanced accuracy
    means = []
    for scale in (0.0, 2.0, 5.0):
        spec = SyntheticSpec(exemplars=6, good_tests=6, bad_tests=6, frames=24,
                             corruption_scale=scale)
        values = []
        for seed in range(6):
            manifest = gen_synthetic(seed, spec, tmp_path / f"s{scale}-{seed}")
            values.append(evaluate(manifest).mean_balanced_accuracy)
        means.append(sum(values) / len(values))
    assert means[0] <= means[1] + 0.05
    assert means[1] <= means[2] + 0.05
    assert means[2] > means[0]


def test_eval_record_and_table(tmp_path):
    manifest = gen_synthetic(25, LIGHT, tmp_path)
    result = evaluate(manifest)
    record = eval_to_record(result, ClassifierParams(), "paper")
    assert record["schema_version"] == "poze-eval/1"
    assert record["groups"][0]["technique"] == "swing"
    assert len(record["groups"][0]["confusion"]) == 2
    table = render_eval_table(result)
    assert "mean balanced accuracy" in table
    assert "swing" in table
