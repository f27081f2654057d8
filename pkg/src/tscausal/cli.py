"""Command-line entry point.

Six subcommands: ``generate``, ``featurize``, ``train``, ``evaluate``,
``reproduce``, ``plot``. The first four compose through a run directory
(datasets, then features, then a model, then a report); ``reproduce`` runs
one of the bundled experiment presets end to end and must produce the same
metrics as the chained form. Exit codes: 0 success, 1 runtime failure,
2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import classify, pipeline, spectral
from .seriesgen import Kind, ProcessSpec, generate as generate_series


class ConfigError(Exception):
    """A config file that cannot be parsed or validated."""


def _load_config(path: str | Path) -> pipeline.ExperimentConfig:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{p}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    try:
        return pipeline.config_from_dict(doc)
    except ValueError as exc:
        raise ConfigError(f"{p}: {exc}") from exc


def _write_config_echo(config: pipeline.ExperimentConfig, run_dir: Path) -> None:
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "config.json").write_text(
        json.dumps(pipeline.config_to_dict(config), indent=2, sort_keys=True) + "\n"
    )


def _run_dir(out: str | None, seed: int, run_name: str | None) -> Path:
    """Explicit --out wins; otherwise runs/<timestamp>-seed<seed>[-<name>]."""
    if out is not None:
        return Path(out)
    stamp = time.strftime("%Y%m%d-%H%M%S")
    suffix = f"-{run_name}" if run_name else ""
    return Path("runs") / f"{stamp}-seed{seed}{suffix}"


def _apply_overrides(config: pipeline.ExperimentConfig, args) -> pipeline.ExperimentConfig:
    if getattr(args, "seed", None) is not None:
        config = replace(config, master_seed=args.seed)
    if getattr(args, "model", None) is not None:
        config = replace(config, model=pipeline.canonical_model(args.model))
    if getattr(args, "threads", None) is not None:
        config = replace(config, threads=args.threads)
    return config


# ---------------------------------------------------------------------------
# subcommands


def cmd_generate(args) -> int:
    config = _apply_overrides(_load_config(args.config), args)
    run_dir = _run_dir(args.out, config.master_seed, args.run_name)
    train_set, test_sets = pipeline.build_all_datasets(config)
    _write_config_echo(config, run_dir)
    pipeline.persist_dataset(train_set, run_dir / "datasets" / config.train_recipe.name)
    for recipe, dataset in zip(config.test_recipes, test_sets):
        pipeline.persist_dataset(dataset, run_dir / "datasets" / recipe.name)
    print(f"wrote {1 + len(test_sets)} datasets under {run_dir / 'datasets'}")
    return 0


def _set_slugs(config: pipeline.ExperimentConfig) -> list[str]:
    return ["train-split", "held-out", *(r.name for r in config.test_recipes)]


def _features_manifest(run_dir: Path) -> dict:
    path = run_dir / "features" / "manifest.json"
    if not path.is_file():
        raise FileNotFoundError(f"missing features manifest: {path} (run `featurize` first)")
    return json.loads(path.read_text())


def _load_feature_set(run_dir: Path, slug: str) -> tuple[np.ndarray, np.ndarray]:
    set_dir = run_dir / "features" / slug
    for name in ("features.csv", "labels.csv"):
        if not (set_dir / name).is_file():
            raise FileNotFoundError(f"missing feature file: {set_dir / name}")
    features = np.loadtxt(set_dir / "features.csv", delimiter=",", ndmin=2)
    labels = np.loadtxt(set_dir / "labels.csv", dtype=np.int64, ndmin=1)
    return features, labels


def cmd_featurize(args) -> int:
    run_dir = Path(args.run_dir)
    config_path = args.config if args.config else run_dir / "config.json"
    config = _apply_overrides(_load_config(config_path), args)

    data_dir = run_dir / "datasets"
    datasets = {}
    for recipe in (config.train_recipe, *config.test_recipes):
        d = data_dir / recipe.name
        if not d.is_dir():
            raise FileNotFoundError(f"missing dataset directory: {d} (run `generate` first)")
        datasets[recipe.name] = pipeline.load_dataset(d)
    named = pipeline.assemble_sets(
        config, datasets[config.train_recipe.name], [datasets[r.name] for r in config.test_recipes]
    )
    stage = pipeline.fit_feature_stage(config, named[0][1])

    feat_root = run_dir / "features"
    sets_meta = []
    for slug, (name, values, labels) in zip(_set_slugs(config), named):
        set_dir = feat_root / slug
        set_dir.mkdir(parents=True, exist_ok=True)
        # 17 significant digits keep the round trip bit-exact, so the chained
        # path trains on the same numbers as an in-process run
        np.savetxt(set_dir / "features.csv", stage.transform(values), fmt="%.17g", delimiter=",")
        np.savetxt(set_dir / "labels.csv", labels, fmt="%d")
        sets_meta.append({"name": name, "dir": slug})
    manifest = {
        "schema_version": pipeline.SCHEMA_VERSION,
        "model": config.model,
        "config": pipeline.config_to_dict(config),
        "sets": sets_meta,
    }
    (feat_root / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(sets_meta)} feature sets ({config.model}) under {feat_root}")
    return 0


def cmd_train(args) -> int:
    run_dir = Path(args.run_dir)
    manifest = _features_manifest(run_dir)
    config = pipeline.config_from_dict(manifest["config"])
    features, labels = _load_feature_set(run_dir, "train-split")
    model = classify.train_lr(
        features, labels, config.lr_hyper, fingerprint=pipeline.config_fingerprint(config)
    )
    out_path = Path(args.model_out) if args.model_out else run_dir / "model.json"
    classify.save_model(model, out_path)
    print(
        f"trained {config.model} model on {labels.size} instances: "
        f"converged={model.converged} loss={model.final_loss:.6g} -> {out_path}"
    )
    return 0


def cmd_evaluate(args) -> int:
    run_dir = Path(args.run_dir)
    manifest = _features_manifest(run_dir)
    config = pipeline.config_from_dict(manifest["config"])
    model_path = Path(args.model_path) if args.model_path else run_dir / "model.json"
    if not model_path.is_file():
        raise FileNotFoundError(f"missing model file: {model_path} (run `train` first)")
    model = classify.load_model(model_path)

    rows = []
    for entry in manifest["sets"]:
        features, labels = _load_feature_set(run_dir, entry["dir"])
        pred, _ = classify.predict(model, features)
        rows.append(pipeline.ReportRow(dataset=entry["name"], report=classify.evaluate(pred, labels)))
    report = pipeline.ExperimentReport(config=config, rows=tuple(rows))
    out_dir = Path(args.out) if args.out else run_dir
    pipeline.write_report(report, out_dir)
    print(pipeline.report_to_text(report), end="")
    return 0


def cmd_reproduce(args) -> int:
    config = pipeline.table_config(
        args.table, scale=args.scale, seed=args.seed, threads=args.threads
    )
    run_dir = _run_dir(args.out, config.master_seed, args.run_name)
    report = pipeline.run_experiment(config)
    _write_config_echo(config, run_dir)
    pipeline.write_report(report, run_dir)
    print(pipeline.report_to_text(report), end="")
    print(f"report written to {run_dir}")
    return 0


# representative realizations behind the plot panels; coefficients sit in the
# middle of the experiment ranges
def _panel_specs(length: int) -> list[tuple[str, ProcessSpec]]:
    arma_kw = dict(ar_terms=((2, 0.85),), ma_terms=((0, 1.0), (3, 0.85)), noise_variance=0.01)
    return [
        ("ar15", ProcessSpec(kind=Kind.AR, length=length, ar_terms=((15, 0.85),), noise_variance=0.01)),
        ("ar100", ProcessSpec(kind=Kind.AR, length=length, ar_terms=((100, 0.85),), noise_variance=0.01)),
        ("arma", ProcessSpec(kind=Kind.ARMA, length=length, **arma_kw)),
        ("arfima", ProcessSpec(kind=Kind.ARFIMA, length=length, d=0.3, **arma_kw)),
        ("noise-normal", ProcessSpec(kind=Kind.NOISE_NORMAL, length=length, noise_variance=0.01)),
        ("noise-uniform", ProcessSpec(kind=Kind.NOISE_UNIFORM, length=length, uniform_lo=-0.6, uniform_hi=0.6)),
    ]


def cmd_plot(args) -> int:
    config = pipeline.table_config("table3", scale="desk", seed=args.seed, threads=args.threads)
    run_dir = _run_dir(args.out, config.master_seed, args.run_name)

    series = {
        name: generate_series(spec, pipeline.derive_seed(config.master_seed, "plot", name)).values
        for name, spec in _panel_specs(config.length)
    }
    written = []
    for name in ("ar15", "noise-normal", "noise-uniform"):
        path = run_dir / f"spectrum-{name}.dat"
        pipeline.emit_plot_data(spectral.amplitude_spectrum(series[name]).amplitudes, path)
        written.append(path)

    # TTSS curves use the same feature scaling as the classifier pipeline;
    # a train split is only simulated when the scaling needs fitting
    scaler_config = replace(config, test_recipes=())
    if scaler_config.per_instance_scaling:
        stage = pipeline.fit_feature_stage(scaler_config, np.empty((0, config.length)))
    else:
        train_set, _ = pipeline.build_all_datasets(scaler_config)
        named = pipeline.assemble_sets(scaler_config, train_set, [])
        stage = pipeline.fit_feature_stage(scaler_config, named[0][1])
    for name, values in series.items():
        path = run_dir / f"ttss-{name}.dat"
        pipeline.emit_plot_data(stage.transform(values[np.newaxis, :])[0], path)
        written.append(path)

    print(f"wrote {len(written)} plot data files under {run_dir}")
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", help="output directory (default: runs/<timestamp>-seed<seed>)")
    sub.add_argument("--run-name", help="suffix for the default output directory name")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tscausal",
        description="Classify time series as causal vs non-causal via spectral and chaotic-neuron features.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="simulate the configured datasets into a run directory")
    p.add_argument("--config", required=True, help="experiment config JSON file")
    p.add_argument("--seed", type=int, help="override the config master seed")
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("featurize", help="extract features for every dataset in a run directory")
    p.add_argument("run_dir", help="run directory produced by `generate`")
    p.add_argument("--config", help="config JSON (default: <run_dir>/config.json)")
    p.add_argument("--model", help="override the feature pipeline (raw, fft, fft_chaosfex)")
    p.add_argument("--threads", type=int, help="worker threads for feature extraction")
    p.set_defaults(func=cmd_featurize)

    p = sub.add_parser("train", help="train the classifier on the train-split features")
    p.add_argument("run_dir", help="run directory produced by `featurize`")
    p.add_argument("--model-out", help="model file path (default: <run_dir>/model.json)")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="score a trained model on every feature set")
    p.add_argument("run_dir", help="run directory produced by `featurize`")
    p.add_argument("--model-path", help="model file (default: <run_dir>/model.json)")
    p.add_argument("--out", help="report directory (default: the run directory)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("reproduce", help="run a bundled experiment preset end to end")
    p.add_argument("table", choices=sorted(pipeline.TABLE_MODELS), help="experiment preset")
    p.add_argument("--scale", choices=pipeline.SCALES, default="desk",
                   help="desk: 250/150 per class; paper: 1250/1250 per class")
    p.add_argument("--seed", type=int, default=42, help="master seed")
    p.add_argument("--threads", type=int, default=1, help="worker threads for feature extraction")
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("plot", help="emit two-column .dat files for spectra and TTSS curves")
    p.add_argument("--seed", type=int, default=42, help="master seed")
    p.add_argument("--threads", type=int, default=1, help="worker threads for feature extraction")
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error [{args.command}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
