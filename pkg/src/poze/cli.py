"""Command-line front door.

Thin client over the same request/response models the HTTP service uses:
commands marshal their arguments into service requests and execute them
in-process by default, or against a running server via --server. Exit codes
are a stable contract: 0 success, 1 runtime failure, 2 usage or validation
failure. Option precedence is CLI flag > --config file > built-in default.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from pathlib import Path

import click
import httpx

from . import __version__
from .classify import ClassifierParams, render_report_table, report_from_record
from .errors import PozeError, ValidationError
from .evaluate import eval_to_record, evaluate, render_eval_table
from .manifest import (
    MANIFEST_SCHEMA_VERSION,
    DatasetManifest,
    ManifestEntry,
    load_manifest,
    save_manifest,
    validate_manifest_record,
)
from .model import MODEL_SCHEMA_VERSION, load_model, model_from_record
from .sequence import SEQUENCE_SCHEMA_VERSION, load_sequence, sequence_to_record, validate_sequence_record
from .service.ops import build_model_op, classify_op
from .service.schemas import (
    BuildModelRequest,
    ClassifyRequest,
    DtwDoc,
    NormalizationDoc,
    ParamsDoc,
)
from .synthetic import SyntheticSpec, gen_synthetic


def _fail_validation(exc: ValidationError) -> None:
    click.echo(f"error: {exc}", err=True)
    for violation in exc.violations:
        click.echo(f"  [{violation.code}] {violation.path}: {violation.message}", err=True)
    sys.exit(2)


def command_errors(fn):
    """Map errors onto the exit-code contract (2 validation, 1 runtime)."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationError as exc:
            _fail_validation(exc)
        except (PozeError, OSError, httpx.HTTPError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        try:
            config = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: config is not valid JSON ({exc})") from exc
    if not isinstance(config, dict):
        raise ValidationError(f"{path}: config must be a JSON object")
    return config


class Settings:
    """Flag > config file > default, per option."""

    def __init__(self, config: dict):
        self.config = config

    def get(self, key: str, flag_value, default):
        if flag_value is not None:
            return flag_value
        return self.config.get(key, default)


pass_settings = click.make_pass_decorator(Settings)


@click.group()
@click.version_option(version=__version__, prog_name="poze")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="JSON config file supplying option defaults.")
@click.pass_context
def main(ctx, config_path):
    """Model ideal motion techniques and score new performances against them."""
    try:
        ctx.obj = Settings(_load_config(config_path))
    except ValidationError as exc:
        _fail_validation(exc)


def _norm_doc(settings: Settings, scale_mode, align_heading) -> NormalizationDoc:
    return NormalizationDoc(
        scale_mode=settings.get("scale_mode", scale_mode, "mean-bone-length"),
        align_heading=bool(settings.get("align_heading", align_heading or None, False)),
    )


def _dtw_doc(settings: Settings, band) -> DtwDoc:
    return DtwDoc(band=settings.get("band", band, None))


def _pair_normalizer(settings: Settings, value) -> str:
    alias = {"paper": "paper", "pairs": "unordered-pairs"}
    raw = settings.get("pair_normalizer", value, "paper")
    if raw not in alias and raw not in alias.values():
        raise ValidationError(f"pair-normalizer must be paper or pairs, got {raw!r}")
    return alias.get(raw, raw)


def _exemplar_paths_from_manifest(manifest_path: str, technique: str | None,
                                  attribute: str | None) -> list[Path]:
    manifest = load_manifest(manifest_path)
    entries = [e for e in manifest.entries if e.split == "train" and e.label == "good"]
    if technique is not None:
        entries = [e for e in entries if e.technique == technique]
    if attribute is not None:
        entries = [e for e in entries if e.attribute == attribute]
    if not entries:
        raise ValidationError(
            f"{manifest_path}: no train/good entries match "
            f"technique={technique!r} attribute={attribute!r}"
        )
    return [manifest.resolve(e) for e in entries]


def _post(server: str, route: str, payload: dict) -> dict:
    response = httpx.post(server.rstrip("/") + route, json=payload, timeout=600.0)
    if response.status_code == 422:
        body = response.json()
        raise ValidationError(f"server rejected request: {body.get('detail', response.text)}")
    response.raise_for_status()
    return response.json()


def _write_json(record: dict, out) -> None:
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(record, fh, allow_nan=False, indent=2)
        fh.write("\n")


@main.command("build-model")
@click.argument("exemplar_files", nargs=-1, type=click.Path(exists=True, dir_okay=False))
@click.option("--exemplars-manifest", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Take exemplars from a manifest's train/good entries.")
@click.option("--technique", required=True, help="Technique name for the model.")
@click.option("--attribute", required=True, help="Attribute name for the model.")
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="Output model file; the exemplar-reference manifest lands beside it.")
@click.option("--pair-normalizer", type=click.Choice(["paper", "pairs"]), default=None)
@click.option("--sigma-floor", type=float, default=None)
@click.option("--band", type=int, default=None, help="Sakoe-Chiba half-width.")
@click.option("--scale-mode", type=click.Choice(["mean-bone-length", "torso-length", "none"]),
              default=None)
@click.option("--align-heading", is_flag=True, default=False)
@click.option("--threads", type=int, default=None)
@click.option("--server", default=None, help="Run against a poze service instead of in-process.")
@pass_settings
@command_errors
def cmd_build_model(settings, exemplar_files, exemplars_manifest, technique, attribute,
                    out, pair_normalizer, sigma_floor, band, scale_mode, align_heading,
                    threads, server):
    """Build a technique model from ideal exemplar sequences."""
    if exemplars_manifest:
        paths = _exemplar_paths_from_manifest(exemplars_manifest, technique, attribute)
    elif exemplar_files:
        paths = [Path(p) for p in exemplar_files]
    else:
        raise click.UsageError("give exemplar files or --exemplars-manifest")
    sequences = [load_sequence(p) for p in paths]
    request = BuildModelRequest(
        technique_name=technique,
        attribute_name=attribute,
        exemplars=[sequence_to_record(s) for s in sequences],
        normalization=_norm_doc(settings, scale_mode, align_heading),
        dtw=_dtw_doc(settings, band),
        pair_normalizer=_pair_normalizer(settings, pair_normalizer),
        sigma_floor=settings.get("sigma_floor", sigma_floor, 1e-8),
        threads=settings.get("threads", threads, 1),
    )
    if settings.get("server", server, None):
        record = _post(settings.get("server", server, None), "/models/build",
                       request.model_dump())
    else:
        record = build_model_op(request).model_dump()
    _write_json(record, out)

    # exemplar-reference manifest, paths relative to its own directory
    out_path = Path(out)
    ref_path = out_path.with_name(out_path.stem + ".exemplars.json")
    entries = tuple(
        ManifestEntry(
            sequence_path=os.path.relpath(p.resolve(), ref_path.resolve().parent),
            technique=technique, attribute=attribute, label="good", split="train",
        )
        for p in paths
    )
    save_manifest(DatasetManifest(entries=entries), ref_path)

    width = max(len(n) for n in record["joint_names"])
    click.echo(f"model {record['technique_name']}/{record['attribute_name']} "
               f"from {record['exemplar_count']} exemplars")
    click.echo(f"{'joint':<{width}}  {'mu':>12}  {'sigma':>12}")
    for name, mu, sigma in zip(record["joint_names"], record["mu"], record["sigma"]):
        click.echo(f"{name:<{width}}  {mu:>12.6f}  {sigma:>12.6f}")
    click.echo(f"wrote {out} and {ref_path}")


@main.command("classify")
@click.argument("sequence_files", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--model", "model_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--exemplars-manifest", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Exemplar-reference manifest; defaults to the one "
                   "build-model wrote beside the model file.")
@click.option("--tau", type=float, default=None)
@click.option("--theta", type=float, default=None)
@click.option("--band", type=int, default=None, help="Override the model's band.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default=None)
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Directory for per-input report files (default: stdout).")
@click.option("--threads", type=int, default=None)
@click.option("--server", default=None)
@pass_settings
@command_errors
def cmd_classify(settings, sequence_files, model_path, exemplars_manifest, tau, theta,
                 band, fmt, out, threads, server):
    """Score new sequences against a model; continues past per-file failures."""
    model = load_model(model_path)
    if exemplars_manifest is None:
        # model-only invocation: use the reference manifest beside the model
        sibling = Path(model_path).with_name(Path(model_path).stem + ".exemplars.json")
        if not sibling.is_file():
            raise ValidationError(
                f"no --exemplars-manifest given and {sibling} does not exist; "
                "classification needs the exemplar set the model was built from"
            )
        exemplars_manifest = str(sibling)
    exemplar_paths = _exemplar_paths_from_manifest(
        exemplars_manifest, model.technique_name, model.attribute_name)
    exemplars = [sequence_to_record(load_sequence(p)) for p in exemplar_paths]
    model_record = json.loads(Path(model_path).read_text(encoding="utf-8"))
    if settings.get("band", band, None) is not None:
        model_record["dtw"]["band"] = settings.get("band", band, None)
    params = ParamsDoc(tau=settings.get("tau", tau, 2.0),
                       theta=settings.get("theta", theta, 0.8))
    fmt = settings.get("format", fmt, "table")
    threads = settings.get("threads", threads, 1)
    server_url = settings.get("server", server, None)
    if out:
        Path(out).mkdir(parents=True, exist_ok=True)

    failures = 0
    for sequence_file in sequence_files:
        try:
            sequence = load_sequence(sequence_file)
            request = ClassifyRequest(model=model_record, exemplars=exemplars,
                                      sequence=sequence_to_record(sequence),
                                      params=params, threads=threads)
            if server_url:
                record = _post(server_url, "/classify", request.model_dump())
            else:
                record = classify_op(request).model_dump()
        except (PozeError, OSError, httpx.HTTPError) as exc:
            failures += 1
            click.echo(f"{sequence_file}: error: {exc}", err=True)
            continue
        if fmt == "json":
            rendered = json.dumps(record, indent=2)
            suffix = ".report.json"
        else:
            rendered = render_report_table(report_from_record(record))
            suffix = ".report.txt"
        if out:
            target = Path(out) / (Path(sequence_file).stem + suffix)
            target.write_text(rendered + "\n", encoding="utf-8")
            click.echo(f"{sequence_file}: {record['verdict']} -> {target}")
        else:
            click.echo(f"== {sequence_file}")
            click.echo(rendered)
    if failures:
        click.echo(f"{failures} of {len(sequence_files)} inputs failed", err=True)
        sys.exit(1)


@main.command("evaluate")
@click.option("--manifest", "manifest_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--tau", type=float, default=None)
@click.option("--theta", type=float, default=None)
@click.option("--pair-normalizer", type=click.Choice(["paper", "pairs"]), default=None)
@click.option("--sigma-floor", type=float, default=None)
@click.option("--band", type=int, default=None)
@click.option("--scale-mode", type=click.Choice(["mean-bone-length", "torso-length", "none"]),
              default=None)
@click.option("--align-heading", is_flag=True, default=False)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Also write the JSON result here.")
@click.option("--threads", type=int, default=None)
@pass_settings
@command_errors
def cmd_evaluate(settings, manifest_path, tau, theta, pair_normalizer, sigma_floor, band,
                 scale_mode, align_heading, fmt, out, threads):
    """Train and score every (technique, attribute) group in a manifest."""
    manifest = load_manifest(manifest_path)
    params = ClassifierParams(tau=settings.get("tau", tau, 2.0),
                              theta=settings.get("theta", theta, 0.8))
    normalizer = _pair_normalizer(settings, pair_normalizer)
    result = evaluate(
        manifest,
        norm_cfg=_norm_doc(settings, scale_mode, align_heading).to_config(),
        dtw_cfg=_dtw_doc(settings, band).to_config(),
        params=params,
        pair_normalizer=normalizer,
        sigma_floor=settings.get("sigma_floor", sigma_floor, 1e-8),
        threads=settings.get("threads", threads, 1),
    )
    record = eval_to_record(result, params, normalizer)
    if settings.get("format", fmt, "table") == "json":
        click.echo(json.dumps(record, indent=2))
    else:
        click.echo(render_eval_table(result))
    if out:
        _write_json(record, out)


@main.command("gen-synthetic")
@click.option("--seed", type=int, required=True)
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
@click.option("--technique", default=None)
@click.option("--attribute", default=None)
@click.option("--exemplars", type=int, default=None)
@click.option("--good-tests", type=int, default=None)
@click.option("--bad-tests", type=int, default=None)
@click.option("--frames", type=int, default=None)
@click.option("--fps", type=float, default=None)
@click.option("--noise", type=float, default=None)
@click.option("--corruption", type=click.Choice(["limb-offset", "segment-time-warp"]),
              default=None)
@click.option("--corruption-scale", type=float, default=None)
@pass_settings
@command_errors
def cmd_gen_synthetic(settings, seed, out_dir, technique, attribute, exemplars, good_tests,
                      bad_tests, frames, fps, noise, corruption, corruption_scale):
    """Materialize a deterministic synthetic dataset (files + manifest)."""
    defaults = SyntheticSpec()
    spec = SyntheticSpec(
        technique=settings.get("technique", technique, defaults.technique),
        attribute=settings.get("attribute", attribute, defaults.attribute),
        exemplars=settings.get("exemplars", exemplars, defaults.exemplars),
        good_tests=settings.get("good_tests", good_tests, defaults.good_tests),
        bad_tests=settings.get("bad_tests", bad_tests, defaults.bad_tests),
        frames=settings.get("frames", frames, defaults.frames),
        fps=settings.get("fps", fps, defaults.fps),
        noise=settings.get("noise", noise, defaults.noise),
        corruption=settings.get("corruption", corruption, defaults.corruption),
        corruption_scale=settings.get("corruption_scale", corruption_scale,
                                      defaults.corruption_scale),
    )
    manifest = gen_synthetic(seed, spec, out_dir)
    _write_json({"seed": seed, "spec": spec.to_record()}, Path(out_dir) / "spec.json")
    click.echo(f"wrote {len(manifest.entries)} sequences under {out_dir} "
               f"(manifest: {Path(out_dir) / 'manifest.json'})")


@main.command("inspect")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@pass_settings
@command_errors
def cmd_inspect(settings, file):
    """Validate and summarize any poze JSON document."""
    with open(file, "r", encoding="utf-8") as fh:
        try:
            record = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{file}: not valid JSON ({exc})") from exc
    version = record.get("schema_version") if isinstance(record, dict) else None
    if version == SEQUENCE_SCHEMA_VERSION:
        violations = validate_sequence_record(record)
        if violations:
            raise ValidationError(f"{file}: invalid sequence",
                                  violations)
        seq = load_sequence(file)
        click.echo(f"sequence {seq.source_id!r}: {seq.n_frames} frames, "
                   f"{seq.joint_count} joints, {seq.fps:g} fps, "
                   f"normalized={seq.normalized}")
    elif version == MODEL_SCHEMA_VERSION:
        model = model_from_record(record)
        click.echo(f"model {model.model_id}: {model.exemplar_count} exemplars, "
                   f"{model.joint_count} joints, pair_normalizer={model.pair_normalizer}")
        click.echo(f"mu range [{model.mu.min():.6f}, {model.mu.max():.6f}], "
                   f"sigma range [{model.sigma.min():.6f}, {model.sigma.max():.6f}]")
    elif version == MANIFEST_SCHEMA_VERSION:
        base_dir = os.fspath(Path(file).parent)
        violations = validate_manifest_record(record, base_dir)
        if violations:
            raise ValidationError(f"{file}: invalid manifest", violations)
        manifest = load_manifest(file)
        groups = manifest.groups()
        click.echo(f"manifest: {len(manifest.entries)} entries, {len(groups)} groups")
        for (technique, attribute), entries in groups.items():
            train = sum(1 for e in entries if e.split == "train")
            click.echo(f"  {technique}/{attribute}: {train} train, "
                       f"{len(entries) - train} test")
    elif version == "poze-report/1":
        report = report_from_record(record)
        click.echo(f"report for {report.source_id!r} against {report.model_id}: "
                   f"{report.verdict} (pass_fraction {report.pass_fraction:.4f})")
    else:
        raise ValidationError(f"{file}: unrecognized schema_version {version!r}")
    click.echo("valid")


@main.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8017)
@command_errors
def cmd_serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
