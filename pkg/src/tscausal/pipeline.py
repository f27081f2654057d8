"""Experiment orchestration: dataset recipes, the three feature pipelines,
persistence, and report emission.

A recipe names parameter ranges for one dataset; per-instance parameters are
drawn from child seeds derived by hashing (master seed, recipe name, class,
index), so datasets are independent yet fully reproducible. The three models
share one shape: build the training corpus, split it 70:30 stratified, fit
the feature stage on the training split only, train the classifier, then
score the held-out split and every extra test set.
"""

from __future__ import annotations

import hashlib
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import classify, spectral
from .chaosfex import GlsParams, extract_ttss
from .classify import CHAOSFEX_LR, DEFAULT_LR, ClassReport, LrHyper, LrModel
from .seriesgen import (
    CAUSAL,
    GENERATOR_NAME,
    Kind,
    LabeledSeries,
    ProcessSpec,
    generate,
)
from .spectral import DEFAULT_HEADROOM, MinMaxScaler

SCHEMA_VERSION = 1

MODELS = ("raw", "fft", "fft_chaosfex")

# accepted spellings for each feature pipeline
MODEL_ALIASES = {
    "raw": "raw",
    "rawvalues": "raw",
    "fft": "fft",
    "fourieramplitude": "fft",
    "fft_chaosfex": "fft_chaosfex",
    "fourierchaosfex": "fft_chaosfex",
}


def canonical_model(name: str) -> str:
    key = str(name).lower()
    if key not in MODEL_ALIASES:
        raise ValueError(f"unknown model {name!r}; expected one of {MODELS}")
    return MODEL_ALIASES[key]

DESK_TRAIN_PER_CLASS = 250
DESK_TEST_PER_CLASS = 150
PAPER_TRAIN_PER_CLASS = 1250
PAPER_TEST_PER_CLASS = 1250
SERIES_LENGTH = 2000
SPLIT_FRACTION = 0.7


def derive_seed(*parts) -> int:
    """Stable 64-bit child seed from a tuple of identifying parts."""
    text = "\x1f".join(str(p) for p in parts)
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "little")


# ---------------------------------------------------------------------------
# recipes


@dataclass(frozen=True)
class CausalFamily:
    """Parameter ranges for one causal process family.

    Lags are drawn uniformly on the inclusive integer range, coefficients on
    the real range. MA ranges apply to ARMA/ARFIMA, the fractional range to
    ARFIMA only.
    """

    kind: Kind
    lag_lo: int = 1
    lag_hi: int = 20
    coeff_lo: float = 0.8
    coeff_hi: float = 0.9
    ma_lag_lo: int = 1
    ma_lag_hi: int = 20
    d_lo: float = -0.5
    d_hi: float = 0.5
    noise_mean: float = 0.0
    noise_variance: float = 0.01


@dataclass(frozen=True)
class NoiseFamily:
    kind: Kind
    mean: float = 0.0
    variance: float = 0.01
    lo: float = -0.6
    hi: float = 0.6


@dataclass(frozen=True)
class DatasetRecipe:
    name: str
    causal: CausalFamily | None = None
    noncausal: NoiseFamily | None = None

    def __post_init__(self):
        if self.causal is None and self.noncausal is None:
            raise ValueError(f"recipe {self.name!r} defines no generator family")


AR_TRAIN = DatasetRecipe(
    "AR-train",
    causal=CausalFamily(Kind.AR),
    noncausal=NoiseFamily(Kind.NOISE_NORMAL, variance=0.01),
)
SHIFT_I = DatasetRecipe(
    "shift-I",
    causal=CausalFamily(Kind.AR),
    noncausal=NoiseFamily(Kind.NOISE_NORMAL, variance=0.09),
)
SHIFT_II = DatasetRecipe(
    "shift-II",
    causal=CausalFamily(Kind.AR),
    noncausal=NoiseFamily(Kind.NOISE_UNIFORM, lo=-0.6, hi=0.6),
)
AR100 = DatasetRecipe("AR100", causal=CausalFamily(Kind.AR, lag_lo=100, lag_hi=100))
ARMA_TEST = DatasetRecipe("ARMA", causal=CausalFamily(Kind.ARMA))
ARFIMA_TEST = DatasetRecipe("ARFIMA", causal=CausalFamily(Kind.ARFIMA))

RECIPES = {
    r.name.lower(): r
    for r in (AR_TRAIN, SHIFT_I, SHIFT_II, AR100, ARMA_TEST, ARFIMA_TEST)
}


# ---------------------------------------------------------------------------
# dataset assembly


def _draw_spec(family: CausalFamily, length: int, rng: np.random.Generator) -> ProcessSpec:
    lag = int(rng.integers(family.lag_lo, family.lag_hi + 1))
    coeff = float(rng.uniform(family.coeff_lo, family.coeff_hi))
    common = dict(
        length=length,
        noise_mean=family.noise_mean,
        noise_variance=family.noise_variance,
    )
    if family.kind == Kind.AR:
        return ProcessSpec(kind=Kind.AR, ar_terms=((lag, coeff),), **common)
    ma_lag = int(rng.integers(family.ma_lag_lo, family.ma_lag_hi + 1))
    ma_coeff = float(rng.uniform(family.coeff_lo, family.coeff_hi))
    ma_terms = ((0, 1.0), (ma_lag, ma_coeff))
    if family.kind == Kind.ARMA:
        return ProcessSpec(kind=Kind.ARMA, ar_terms=((lag, coeff),), ma_terms=ma_terms, **common)
    if family.kind == Kind.ARFIMA:
        d = float(rng.uniform(family.d_lo, family.d_hi))
        return ProcessSpec(
            kind=Kind.ARFIMA, ar_terms=((lag, coeff),), ma_terms=ma_terms, d=d, **common
        )
    raise ValueError(f"unsupported causal kind: {family.kind}")


def _noise_spec(family: NoiseFamily, length: int) -> ProcessSpec:
    if family.kind == Kind.NOISE_NORMAL:
        return ProcessSpec(
            kind=family.kind, length=length, noise_mean=family.mean, noise_variance=family.variance
        )
    if family.kind == Kind.NOISE_UNIFORM:
        return ProcessSpec(kind=family.kind, length=length, uniform_lo=family.lo, uniform_hi=family.hi)
    raise ValueError(f"unsupported noise kind: {family.kind}")


def build_dataset(
    recipe: DatasetRecipe, n_per_class: int, length: int, master_seed: int
) -> list[LabeledSeries]:
    """Simulate a labeled dataset: causal rows first, then non-causal rows."""
    if n_per_class < 1:
        raise ValueError(f"n_per_class must be >= 1, got {n_per_class}")
    out: list[LabeledSeries] = []
    if recipe.causal is not None:
        for i in range(n_per_class):
            rng = np.random.default_rng(derive_seed(master_seed, recipe.name, "causal", i))
            spec = _draw_spec(recipe.causal, length, rng)
            out.append(generate(spec, int(rng.integers(0, 2**63))))
    if recipe.noncausal is not None:
        spec = _noise_spec(recipe.noncausal, length)
        for i in range(n_per_class):
            rng = np.random.default_rng(derive_seed(master_seed, recipe.name, "noncausal", i))
            out.append(generate(spec, int(rng.integers(0, 2**63))))
    return out


def values_matrix(dataset: list[LabeledSeries]) -> np.ndarray:
    return np.stack([s.values for s in dataset])


def labels_vector(dataset: list[LabeledSeries]) -> np.ndarray:
    return np.array([s.label for s in dataset], dtype=np.int64)


def stratified_split(labels: np.ndarray, fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Index split keeping per-class counts within 1 of exact proportionality."""
    if not 0 < fraction < 1:
        raise ValueError(f"split fraction must lie in (0, 1), got {fraction}")
    rng = np.random.default_rng(seed)
    train_idx, rest_idx = [], []
    for cls in np.unique(labels):
        idx = np.flatnonzero(labels == cls)
        perm = rng.permutation(idx)
        k = int(round(fraction * idx.size))
        train_idx.append(perm[:k])
        rest_idx.append(perm[k:])
    return np.sort(np.concatenate(train_idx)), np.sort(np.concatenate(rest_idx))


# ---------------------------------------------------------------------------
# experiment configuration


@dataclass(frozen=True)
class ExperimentConfig:
    master_seed: int = 42
    model: str = "fft_chaosfex"
    train_recipe: DatasetRecipe = AR_TRAIN
    test_recipes: tuple[DatasetRecipe, ...] = (SHIFT_I, SHIFT_II, AR100, ARMA_TEST, ARFIMA_TEST)
    n_train_per_class: int = DESK_TRAIN_PER_CLASS
    n_test_per_class: int = DESK_TEST_PER_CLASS
    length: int = SERIES_LENGTH
    split_fraction: float = SPLIT_FRACTION
    gls: GlsParams = GlsParams()
    lr: LrHyper | None = None
    headroom: float = DEFAULT_HEADROOM
    demean_first: bool = False
    keep_dc: bool = True
    per_instance_scaling: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if not 0 < self.split_fraction < 1:
            raise ValueError(f"split_fraction must lie in (0, 1), got {self.split_fraction}")
        if self.n_train_per_class < 1 or self.n_test_per_class < 1:
            raise ValueError("per-class counts must be >= 1")
        names = [self.train_recipe.name, *(r.name for r in self.test_recipes)]
        if len(set(names)) != len(names):
            raise ValueError(f"recipe names must be unique within a config, got {names}")

    @property
    def lr_hyper(self) -> LrHyper:
        if self.lr is not None:
            return self.lr
        return CHAOSFEX_LR if self.model == "fft_chaosfex" else DEFAULT_LR


TABLE_MODELS = {"table1-lr": "raw", "table2-lr": "fft", "table3": "fft_chaosfex"}
SCALES = ("desk", "paper")


def table_config(table: str, scale: str = "desk", seed: int = 42, threads: int = 1) -> ExperimentConfig:
    """Configuration for one of the bundled experiment presets."""
    if table not in TABLE_MODELS:
        raise ValueError(f"unknown table {table!r}; expected one of {sorted(TABLE_MODELS)}")
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}; expected one of {SCALES}")
    model = TABLE_MODELS[table]
    tests = (SHIFT_I, SHIFT_II) if model != "fft_chaosfex" else (
        SHIFT_I,
        SHIFT_II,
        AR100,
        ARMA_TEST,
        ARFIMA_TEST,
    )
    paper = scale == "paper"
    return ExperimentConfig(
        master_seed=seed,
        model=model,
        test_recipes=tests,
        n_train_per_class=PAPER_TRAIN_PER_CLASS if paper else DESK_TRAIN_PER_CLASS,
        n_test_per_class=PAPER_TEST_PER_CLASS if paper else DESK_TEST_PER_CLASS,
        # train-fitted min-max clips shifted spectra against the domain
        # ceiling, collapsing the chaos features; the preset scales each
        # spectrum independently so shifted sets stay inside [0, 1)
        per_instance_scaling=model == "fft_chaosfex",
        threads=threads,
    )


# ---------------------------------------------------------------------------
# feature stages


@dataclass(frozen=True)
class FeatureStage:
    """Feature transform fitted on the training split (scaler may be None)."""

    model: str
    scaler: MinMaxScaler | None
    config: ExperimentConfig

    def transform(self, values: np.ndarray) -> np.ndarray:
        cfg = self.config
        if cfg.demean_first:
            values = spectral.demean(values)
        if self.model == "raw":
            return np.asarray(values, dtype=np.float64)
        amps = spectral.amplitude_spectra(values)
        if not cfg.keep_dc:
            amps = amps[:, 1:]
        if self.model == "fft":
            return amps
        if cfg.per_instance_scaling:
            scaled = spectral.scale_per_instance(amps, cfg.headroom)
        else:
            scaled = spectral.apply_scaler(self.scaler, amps)
        return extract_ttss(scaled, cfg.gls, threads=cfg.threads)


def fit_feature_stage(config: ExperimentConfig, train_values: np.ndarray) -> FeatureStage:
    scaler = None
    if config.model == "fft_chaosfex" and not config.per_instance_scaling:
        values = spectral.demean(train_values) if config.demean_first else train_values
        amps = spectral.amplitude_spectra(values)
        if not config.keep_dc:
            amps = amps[:, 1:]
        scaler = spectral.fit_scaler(amps, config.headroom)
    return FeatureStage(model=config.model, scaler=scaler, config=config)


# ---------------------------------------------------------------------------
# experiment run


@dataclass(frozen=True)
class ReportRow:
    dataset: str
    report: ClassReport


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    rows: tuple[ReportRow, ...]
    timings: dict[str, float] = field(default_factory=dict, compare=False)

    def row(self, dataset: str) -> ClassReport:
        for r in self.rows:
            if r.dataset == dataset:
                return r.report
        raise KeyError(dataset)


def config_fingerprint(config: ExperimentConfig) -> str:
    """Hash of everything that determines the training data and features.

    Thread count is an execution detail with no effect on results, so it is
    excluded.
    """
    doc = config_to_dict(config)
    doc.pop("threads")
    return hashlib.blake2b(
        json.dumps(doc, sort_keys=True).encode(), digest_size=16
    ).hexdigest()


@contextmanager
def _stage(stage: str, dataset: str):
    try:
        yield
    except Exception as exc:
        raise RuntimeError(f"{stage} stage failed on {dataset!r}: {exc}") from exc


def split_indices(config: ExperimentConfig, labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    split_seed = derive_seed(config.master_seed, config.train_recipe.name, "split")
    return stratified_split(labels, config.split_fraction, split_seed)


def build_all_datasets(
    config: ExperimentConfig,
) -> tuple[list[LabeledSeries], list[list[LabeledSeries]]]:
    """The training-recipe dataset plus one dataset per test recipe."""
    with _stage("generate", config.train_recipe.name):
        train_set = build_dataset(
            config.train_recipe, config.n_train_per_class, config.length, config.master_seed
        )
    test_sets = []
    for recipe in config.test_recipes:
        with _stage("generate", recipe.name):
            test_sets.append(
                build_dataset(recipe, config.n_test_per_class, config.length, config.master_seed)
            )
    return train_set, test_sets


def assemble_sets(
    config: ExperimentConfig,
    train_set: list[LabeledSeries],
    test_sets: list[list[LabeledSeries]],
) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """(display name, values, labels) rows: train split, held-out, then tests.

    The split is a pure function of the configuration, so regenerated and
    reloaded datasets partition identically.
    """
    all_values = values_matrix(train_set)
    all_labels = labels_vector(train_set)
    train_idx, heldout_idx = split_indices(config, all_labels)
    named = [
        (f"{config.train_recipe.name} (train split)", all_values[train_idx], all_labels[train_idx]),
        (f"{config.train_recipe.name} (held-out)", all_values[heldout_idx], all_labels[heldout_idx]),
    ]
    for recipe, dataset in zip(config.test_recipes, test_sets):
        named.append((recipe.name, values_matrix(dataset), labels_vector(dataset)))
    return named


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Train the configured model and evaluate it on every configured set."""
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    train_set, test_sets = build_all_datasets(config)
    timings["generate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    named = assemble_sets(config, train_set, test_sets)
    with _stage("featurize", named[0][0]):
        feature_stage = fit_feature_stage(config, named[0][1])
    named_features = []
    for name, values, labels in named:
        with _stage("featurize", name):
            named_features.append((name, feature_stage.transform(values), labels))
    timings["featurize"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    with _stage("train", named_features[0][0]):
        model = classify.train_lr(
            named_features[0][1],
            named_features[0][2],
            config.lr_hyper,
            fingerprint=config_fingerprint(config),
        )
    timings["train"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    rows = []
    for name, feats, labels in named_features:
        with _stage("evaluate", name):
            pred, _ = classify.predict(model, feats)
            rows.append(ReportRow(dataset=name, report=classify.evaluate(pred, labels)))
    timings["evaluate"] = time.perf_counter() - t0

    return ExperimentReport(config=config, rows=tuple(rows), timings=timings)


# ---------------------------------------------------------------------------
# config (de)serialization


def _family_to_dict(f: CausalFamily | NoiseFamily | None) -> dict | None:
    if f is None:
        return None
    if isinstance(f, CausalFamily):
        return {
            "kind": f.kind.value,
            "lag_lo": f.lag_lo,
            "lag_hi": f.lag_hi,
            "coeff_lo": f.coeff_lo,
            "coeff_hi": f.coeff_hi,
            "ma_lag_lo": f.ma_lag_lo,
            "ma_lag_hi": f.ma_lag_hi,
            "d_lo": f.d_lo,
            "d_hi": f.d_hi,
            "noise_mean": f.noise_mean,
            "noise_variance": f.noise_variance,
        }
    return {"kind": f.kind.value, "mean": f.mean, "variance": f.variance, "lo": f.lo, "hi": f.hi}


def recipe_to_dict(recipe: DatasetRecipe) -> dict:
    return {
        "name": recipe.name,
        "causal": _family_to_dict(recipe.causal),
        "noncausal": _family_to_dict(recipe.noncausal),
    }


def recipe_from_value(value) -> DatasetRecipe:
    """Accept a registry name or an inline recipe object."""
    if isinstance(value, str):
        key = value.lower()
        if key not in RECIPES:
            raise ValueError(f"unknown recipe {value!r}; known: {sorted(RECIPES)}")
        return RECIPES[key]
    if not isinstance(value, dict):
        raise ValueError(f"recipe must be a name or an object, got {type(value).__name__}")
    causal = value.get("causal")
    noncausal = value.get("noncausal")
    return DatasetRecipe(
        name=str(value.get("name", "custom")),
        causal=CausalFamily(**{**causal, "kind": Kind(causal["kind"])}) if causal else None,
        noncausal=NoiseFamily(**{**noncausal, "kind": Kind(noncausal["kind"])}) if noncausal else None,
    )


def config_to_dict(config: ExperimentConfig) -> dict:
    return {
        "master_seed": config.master_seed,
        "model": config.model,
        "train_recipe": recipe_to_dict(config.train_recipe),
        "test_recipes": [recipe_to_dict(r) for r in config.test_recipes],
        "n_train_per_class": config.n_train_per_class,
        "n_test_per_class": config.n_test_per_class,
        "length": config.length,
        "split_fraction": config.split_fraction,
        "gls": {
            "q": config.gls.q,
            "b": config.gls.b,
            "eps": config.gls.eps,
            "max_len": config.gls.max_len,
        },
        "lr": {
            "c": config.lr_hyper.c,
            "tol": config.lr_hyper.tol,
            "max_iter": config.lr_hyper.max_iter,
        },
        "headroom": config.headroom,
        "demean_first": config.demean_first,
        "keep_dc": config.keep_dc,
        "per_instance_scaling": config.per_instance_scaling,
        "threads": config.threads,
    }


_CONFIG_KEYS = {
    "master_seed": int,
    "model": str,
    "train_recipe": None,
    "test_recipes": None,
    "n_train_per_class": int,
    "n_test_per_class": int,
    "length": int,
    "split_fraction": float,
    "gls": None,
    "lr": None,
    "headroom": float,
    "demean_first": bool,
    "keep_dc": bool,
    "per_instance_scaling": bool,
    "threads": int,
}


def config_from_dict(doc: dict) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise ValueError("config must be a JSON object")
    for key in doc:
        if key not in _CONFIG_KEYS:
            raise ValueError(f"unknown config key {key!r}")
    kwargs = {}
    for key, caster in _CONFIG_KEYS.items():
        if key not in doc:
            continue
        value = doc[key]
        try:
            if key == "train_recipe":
                kwargs[key] = recipe_from_value(value)
            elif key == "test_recipes":
                kwargs[key] = tuple(recipe_from_value(v) for v in value)
            elif key == "gls":
                kwargs[key] = GlsParams(**value)
            elif key == "lr":
                kwargs[key] = LrHyper(**value) if value is not None else None
            elif key == "model":
                kwargs[key] = canonical_model(value)
            else:
                kwargs[key] = caster(value)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"config key {key!r}: {exc}") from exc
    return ExperimentConfig(**kwargs)


# ---------------------------------------------------------------------------
# reports on disk


def report_to_dict(report: ExperimentReport) -> dict:
    # timings and thread count are deliberately excluded: report.json must be
    # byte-identical across reruns with the same configuration
    config = config_to_dict(report.config)
    config.pop("threads")
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "rows": [{"dataset": r.dataset, **r.report.to_dict()} for r in report.rows],
    }


def _fmt_pair(pair: tuple[float | None, float | None]) -> str:
    return "(%s, %s)" % tuple("NA" if v is None else f"{v:.2f}" for v in pair)


def report_to_text(report: ExperimentReport) -> str:
    lines = [
        f"model: {report.config.model}    seed: {report.config.master_seed}    "
        f"train: {report.config.n_train_per_class}/class    "
        f"test: {report.config.n_test_per_class}/class    length: {report.config.length}",
        "",
    ]
    header = f"{'Dataset':<28}{'Precision':<16}{'Recall':<16}{'F1':<16}{'Accuracy':<10}{'Support'}"
    lines.append(header)
    lines.append("-" * len(header))
    for row in report.rows:
        r = row.report
        lines.append(
            f"{row.dataset:<28}{_fmt_pair(r.precision):<16}{_fmt_pair(r.recall):<16}"
            f"{_fmt_pair(r.f1):<16}{r.accuracy * 100:>7.2f}%  ({r.support[0]}, {r.support[1]})"
        )
    if report.timings:
        lines.append("")
        lines.append(
            "timings: " + ", ".join(f"{k} {v:.2f}s" for k, v in report.timings.items())
        )
    return "\n".join(lines) + "\n"


def write_report(report: ExperimentReport, out_dir: str | Path) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(
        json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
    )
    (out / "report.txt").write_text(report_to_text(report))


# ---------------------------------------------------------------------------
# plot data


def emit_plot_data(values: np.ndarray, path: str | Path) -> None:
    """Write a two-column (index, value) text file for external plotting."""
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.size == 0:
        raise ValueError("refusing to write plot data for an empty vector")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fh:
        for i, x in enumerate(v.tolist()):
            fh.write(f"{i} {x!r}\n")


def count_local_extrema(curve: np.ndarray) -> int:
    """Strict turning points of a curve, with plateaus compressed first."""
    diffs = np.diff(np.asarray(curve, dtype=np.float64))
    signs = np.sign(diffs)
    signs = signs[signs != 0]
    if signs.size < 2:
        return 0
    return int(np.sum(signs[1:] != signs[:-1]))


# ---------------------------------------------------------------------------
# dataset persistence


def _spec_to_dict(spec: ProcessSpec) -> dict:
    return {
        "kind": spec.kind.value,
        "length": spec.length,
        "c": spec.c,
        "ar_terms": [list(t) for t in spec.ar_terms],
        "ma_terms": [list(t) for t in spec.ma_terms],
        "d": spec.d,
        "noise_mean": spec.noise_mean,
        "noise_variance": spec.noise_variance,
        "uniform_lo": spec.uniform_lo,
        "uniform_hi": spec.uniform_hi,
        "burn_in": spec.burn_in,
    }


def _spec_from_dict(doc: dict) -> ProcessSpec:
    return ProcessSpec(
        kind=Kind(doc["kind"]),
        length=int(doc["length"]),
        c=float(doc["c"]),
        ar_terms=tuple((int(l), float(a)) for l, a in doc["ar_terms"]),
        ma_terms=tuple((int(l), float(b)) for l, b in doc["ma_terms"]),
        d=float(doc["d"]),
        noise_mean=float(doc["noise_mean"]),
        noise_variance=float(doc["noise_variance"]),
        uniform_lo=float(doc["uniform_lo"]),
        uniform_hi=float(doc["uniform_hi"]),
        burn_in=int(doc["burn_in"]),
    )


def persist_dataset(dataset: list[LabeledSeries], dir_path: str | Path) -> None:
    """Write manifest.json + values.csv; values survive bit-exactly."""
    if not dataset:
        raise ValueError("refusing to persist an empty dataset")
    out = Path(dir_path)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "generator": GENERATOR_NAME,
        "length": int(dataset[0].values.size),
        "series": [
            {"label": s.label, "seed": s.seed, "spec": _spec_to_dict(s.spec)} for s in dataset
        ],
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    # 17 significant digits round-trip every double exactly
    np.savetxt(out / "values.csv", values_matrix(dataset), fmt="%.17g", delimiter=",")


def load_dataset(dir_path: str | Path) -> list[LabeledSeries]:
    src = Path(dir_path)
    manifest_path = src / "manifest.json"
    values_path = src / "values.csv"
    if not manifest_path.is_file():
        raise FileNotFoundError(f"missing dataset manifest: {manifest_path}")
    if not values_path.is_file():
        raise FileNotFoundError(f"missing dataset values: {values_path}")
    manifest = json.loads(manifest_path.read_text())
    version = manifest.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported dataset schema version: {version!r}")
    values = np.loadtxt(values_path, delimiter=",", ndmin=2)
    if values.shape[0] != len(manifest["series"]):
        raise ValueError(
            f"corrupt dataset: {values.shape[0]} value rows for "
            f"{len(manifest['series'])} manifest entries"
        )
    out = []
    for row, entry in zip(values, manifest["series"]):
        row = row.copy()
        row.setflags(write=False)
        out.append(
            LabeledSeries(
                values=row,
                label=int(entry["label"]),
                spec=_spec_from_dict(entry["spec"]),
                seed=int(entry["seed"]),
            )
        )
    return out
