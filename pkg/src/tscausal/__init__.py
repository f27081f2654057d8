"""Causal-structure detection for time series.

Seeded simulation of causal (AR/ARMA/ARFIMA) and non-causal (i.i.d.) series,
amplitude-spectrum and chaotic-neuron TTSS features, and an L2-regularized
logistic-regression classifier, wired into reproducible experiments.
"""

from .chaosfex import FiringResult, GlsParams, extract_ttss, fire, fire_batch, gls_map
from .classify import (
    CHAOSFEX_LR,
    DEFAULT_LR,
    ClassReport,
    LrHyper,
    LrModel,
    evaluate,
    load_model,
    predict,
    save_model,
    train_lr,
)
from .pipeline import (
    DatasetRecipe,
    ExperimentConfig,
    ExperimentReport,
    RECIPES,
    build_dataset,
    load_dataset,
    persist_dataset,
    run_experiment,
    table_config,
    write_report,
)
from .seriesgen import (
    Kind,
    LabeledSeries,
    ProcessSpec,
    fractional_integration_weights,
    gen_ar,
    gen_arfima,
    gen_arma,
    gen_noise,
    generate,
)
from .spectral import (
    MinMaxScaler,
    Spectrum,
    amplitude_spectrum,
    amplitude_spectra,
    apply_scaler,
    demean,
    fit_scaler,
)

__version__ = "0.1.0"

__all__ = [
    "CHAOSFEX_LR",
    "DEFAULT_LR",
    "ClassReport",
    "DatasetRecipe",
    "ExperimentConfig",
    "ExperimentReport",
    "FiringResult",
    "GlsParams",
    "Kind",
    "LabeledSeries",
    "LrHyper",
    "LrModel",
    "MinMaxScaler",
    "ProcessSpec",
    "RECIPES",
    "Spectrum",
    "amplitude_spectra",
    "amplitude_spectrum",
    "apply_scaler",
    "build_dataset",
    "demean",
    "evaluate",
    "extract_ttss",
    "fire",
    "fire_batch",
    "fit_scaler",
    "fractional_integration_weights",
    "gen_ar",
    "gen_arfima",
    "gen_arma",
    "gen_noise",
    "generate",
    "gls_map",
    "load_dataset",
    "load_model",
    "persist_dataset",
    "predict",
    "run_experiment",
    "save_model",
    "table_config",
    "train_lr",
    "write_report",
]
