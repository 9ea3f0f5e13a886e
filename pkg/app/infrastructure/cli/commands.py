"""Sub-command handlers — one validated run config in, artifacts plus provenance out."""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from app.adapters.csv_loader.loader import to_csv_text
from app.adapters.files import atomic_write_text
from app.adapters.pair_sources.sources import (
    AudioMixSource,
    BenchmarkStreamSource,
    FixedPairSource,
)
from app.adapters.reports.tables import (
    format_table,
    score_rows,
    write_gain_map_csv,
    write_history_csv,
    write_rows_csv,
    write_score_csv,
)
from app.application.dto.run_config import (
    DenoiseRunConfig,
    EvaluateRunConfig,
    FoldsRunConfig,
    GainMapRunConfig,
    GenerateRunConfig,
    Method,
    MixRunConfig,
    TrainRunConfig,
)
from app.application.ports.denoiser import Denoiser
from app.application.ports.pair_source import PairSource
from app.application.use_cases.mix_audio import AudioMixer
from app.config import settings
from app.domain.policies.filter_bank import standard_kernel
from app.domain.policies.lwpt import init_wpt
from app.domain.policies.mixing import DEFAULT_REFERENCE_WINDOW, background_reference_norm
from app.domain.policies.scoring import select_layers_entropy
from app.domain.value_objects.specs import ClassSpec, FoldPlan, MixSpec, NoiseSpec, TrainConfig
from app.infrastructure.cli import dependencies as deps
from app.infrastructure.cli.config_file import merge_config
from app.infrastructure.cli.provenance import write_provenance

logger = logging.getLogger(__name__)

STREAM_SAMPLES_PER_EPOCH = 16000
LAYER_SELECTION_SAMPLES = 32
REFERENCE_SAMPLES = 64


def history_path(model_path: Path) -> Path:
    return model_path.with_name(f"{model_path.stem}.history.csv")


# ─── generate ────────────────────────────────────────────────────────


def cmd_generate(cfg: GenerateRunConfig) -> None:
    class_spec = ClassSpec(cfg.class_id, cfg.length, cfg.seed)
    noise_spec = NoiseSpec(cfg.family, cfg.sigma, cfg.seed)
    deps.get_generate_uc(cfg.signal_format).execute(
        class_spec, noise_spec, cfg.count, cfg.output, cfg.modification
    )
    write_provenance(cfg.output, "generate", cfg)


# ─── train ───────────────────────────────────────────────────────────


def _training_source(cfg: TrainRunConfig) -> tuple[PairSource, dict[str, Any], int]:
    """The pair source, its model metadata and the samples one epoch covers."""
    samples = cfg.samples_per_epoch or STREAM_SAMPLES_PER_EPOCH
    if cfg.data is not None:
        entries = deps.get_dataset_store().read(cfg.data)
        metadata: dict[str, Any] = {"source": "dataset"}
        sigmas = {e.record.sigma for e in entries}
        if len(sigmas) == 1 and None not in sigmas:
            metadata["sigma"] = sigmas.pop()
        source = FixedPairSource(
            [e.pair for e in entries], cfg.batch_size, cfg.seed, cfg.samples_per_epoch
        )
        return source, metadata, cfg.samples_per_epoch or len(entries)

    if cfg.stream_classes:
        classes = [ClassSpec(c, cfg.length, cfg.seed) for c in cfg.stream_classes]
        noise = NoiseSpec(cfg.family, cfg.sigma, cfg.seed)
        source = BenchmarkStreamSource(classes, noise, cfg.batch_size, samples)
        metadata = {
            "source": "benchmark",
            "classes": [c.value for c in cfg.stream_classes],
            "sigma": cfg.sigma,
            "family": cfg.family.value,
        }
        return source, metadata, samples

    audio = deps.get_audio_source()
    spec = MixSpec(target_length=cfg.length, target_rate=cfg.target_rate, snr_db=cfg.snr_db)
    mixer = AudioMixer(audio, audio.entries(cfg.audio_manifest), spec, cfg.train_labels)
    source = AudioMixSource(mixer, cfg.batch_size, samples, cfg.seed)
    window = min(DEFAULT_REFERENCE_WINDOW, cfg.length)
    backgrounds = [n.samples - c.samples for n, c in source.sample_pairs(REFERENCE_SAMPLES)]
    metadata = {
        "source": "audio",
        "target_rate": cfg.target_rate,
        "reference_window": window,
        "background_reference_norm": background_reference_norm(
            backgrounds, window=window, seed=cfg.seed
        ),
    }
    return source, metadata, samples


def _train_config(cfg: TrainRunConfig, samples_per_epoch: int) -> TrainConfig:
    drops = {e for e in cfg.lr_drop_epochs if 1 <= e <= cfg.epochs}
    if dropped := sorted(set(cfg.lr_drop_epochs) - drops):
        logger.warning("Ignoring learning-rate drops %s outside 1..%d", dropped, cfg.epochs)
    return TrainConfig(
        learning_rate=cfg.learning_rate,
        batch_size=cfg.batch_size,
        epochs=cfg.epochs,
        lr_drop_epochs=frozenset(drops),
        seed=cfg.seed,
        samples_per_epoch=samples_per_epoch,
    )


def cmd_train(cfg: TrainRunConfig) -> None:
    source, metadata, samples = _training_source(cfg)
    kernel = standard_kernel(cfg.wavelet)
    layers = cfg.layers
    if layers is None:
        clean = [c for _, c in source.sample_pairs(LAYER_SELECTION_SAMPLES)]
        layers = select_layers_entropy(clean, kernel, cfg.layer_candidates)
        logger.info("Selected L=%d by entropy", layers)

    initial = init_wpt(layers, len(kernel), kernel)
    result = deps.get_train_uc().execute(
        initial,
        source,
        _train_config(cfg, samples),
        cfg.output,
        checkpoint_every=cfg.checkpoint_every,
        resume=cfg.resume,
        metadata={**metadata, "wavelet": kernel.name, "seed": cfg.seed},
    )
    write_history_csv(history_path(cfg.output), result.history)
    results = {"layers": layers, "param_count": result.model.metadata["param_count"]}
    if result.history:
        results["final_loss"] = result.history[-1].mean_loss
    write_provenance(cfg.output.parent, "train", cfg, results)


# ─── denoise / evaluate / gainmap ────────────────────────────────────


def cmd_denoise(cfg: DenoiseRunConfig) -> None:
    denoiser = deps.build_denoiser(cfg)
    done = deps.get_denoise_uc(cfg.signal_format).execute(
        cfg.inputs,
        cfg.output,
        denoiser,
        auto_delta_leading=cfg.leading if cfg.auto_delta else None,
    )
    results = None
    if cfg.auto_delta:
        results = {"delta": {str(d.source): d.delta for d in done}}
    write_provenance(cfg.output, "denoise", cfg, results)


def _sweep_rows(cfg: EvaluateRunConfig) -> tuple[list[dict[str, Any]], dict[str, Any] | None]:
    uc = deps.get_evaluate_uc()
    if cfg.sweep_layers:
        fitted: dict[str, float] = {}

        def denoiser_for(layers: int) -> Denoiser:
            ht = None
            if cfg.method is Method.HT and cfg.fit_lambda_on is not None:
                ht = uc.fit_threshold(cfg.fit_lambda_on, layers, cfg.wavelet, settings.workers)
                fitted[str(layers)] = ht.threshold
            return deps.build_denoiser(cfg.model_copy(update={"layers": layers}), ht)

        rows = uc.sweep_layers(denoiser_for, cfg.sweep_layers, cfg.test, cfg.trained_classes)
        return rows, {"threshold": fitted} if fitted else None

    ht = None
    if cfg.method is Method.HT and cfg.fit_lambda_on is not None:
        ht = uc.fit_threshold(cfg.fit_lambda_on, cfg.layers, cfg.wavelet, settings.workers)
    classes = [ClassSpec(c, cfg.length, cfg.seed) for c in cfg.sweep_classes]
    noises = [NoiseSpec(f, s, cfg.seed) for f in cfg.sweep_families for s in cfg.sweep_sigmas]
    rows = uc.sweep_noise(
        deps.build_denoiser(cfg, ht), classes, noises, cfg.sweep_count, cfg.trained_classes
    )
    return rows, {"threshold": ht.threshold} if ht is not None else None


def cmd_evaluate(cfg: EvaluateRunConfig) -> None:
    if cfg.sweep_layers or cfg.sweep_sigmas:
        rows, results = _sweep_rows(cfg)
        write_rows_csv(cfg.output, rows)
        print(format_table(list(rows[0]), [list(r.values()) for r in rows]))
        write_provenance(cfg.output.parent, "evaluate", cfg, results)
        return

    uc = deps.get_evaluate_uc()
    fitted = None
    if cfg.method is Method.HT and cfg.fit_lambda_on is not None:
        fitted = uc.fit_threshold(cfg.fit_lambda_on, cfg.layers, cfg.wavelet, settings.workers)
    denoiser = deps.build_denoiser(cfg, fitted)
    report = uc.execute(denoiser, cfg.test, cfg.trained_classes)
    write_score_csv(cfg.output, denoiser.name, report, cfg.per_class)
    print(format_table(*score_rows(denoiser.name, report, cfg.per_class)))
    results = {"threshold": fitted.threshold} if fitted is not None else None
    write_provenance(cfg.output.parent, "evaluate", cfg, results)


def cmd_gainmap(cfg: GainMapRunConfig) -> None:
    gm = deps.get_gain_map_uc().execute(
        deps.build_denoiser(cfg),
        cfg.amplitude_count,
        cfg.amplitude_max,
        cfg.frequency_count,
        cfg.frequency_max,
        cfg.length,
        cfg.sample_rate,
    )
    write_gain_map_csv(cfg.output, gm)
    write_provenance(cfg.output.parent, "gainmap", cfg)


# ─── audio ───────────────────────────────────────────────────────────


def cmd_mix(cfg: MixRunConfig) -> None:
    spec = MixSpec(
        target_length=cfg.target_length,
        target_rate=cfg.target_rate,
        snr_db=cfg.snr_db,
        background_gain=cfg.background_gain,
        leading_background_samples=cfg.leading,
        raw_background=cfg.raw_background,
    )
    deps.get_mix_uc(cfg.signal_format).execute(
        cfg.manifest, spec, cfg.count, cfg.seed, cfg.output, cfg.labels
    )
    write_provenance(cfg.output, "mix", cfg)


def cmd_folds(cfg: FoldsRunConfig) -> None:
    folds = deps.get_folds_uc().execute(cfg.manifest, FoldPlan(cfg.n_folds, cfg.seed))
    rows = [(k, label) for k, fold in enumerate(folds) for label in fold]
    atomic_write_text(cfg.output, to_csv_text(("fold", "label"), rows))
    print(format_table(("fold", "classes"), [(k, " ".join(f)) for k, f in enumerate(folds)]))
    write_provenance(cfg.output.parent, "folds", cfg)


# ─── dispatch ────────────────────────────────────────────────────────

Handler = Callable[[Any], None]

COMMANDS: dict[str, tuple[type[BaseModel], Handler]] = {
    "generate": (GenerateRunConfig, cmd_generate),
    "train": (TrainRunConfig, cmd_train),
    "denoise": (DenoiseRunConfig, cmd_denoise),
    "evaluate": (EvaluateRunConfig, cmd_evaluate),
    "gainmap": (GainMapRunConfig, cmd_gainmap),
    "mix": (MixRunConfig, cmd_mix),
    "folds": (FoldsRunConfig, cmd_folds),
}


def resolve_config(
    command: str, flags: Mapping[str, Any], config_path: Path | None = None
) -> BaseModel:
    """Defaults < config file < flags, validated by the command's run-config model."""
    model_cls, _ = COMMANDS[command]
    defaults: dict[str, Any] = {"signal_format": settings.signal_format}
    if command == "train":
        defaults["checkpoint_every"] = settings.checkpoint_every
    return model_cls.model_validate(merge_config(command, flags, config_path, defaults))


def run_command(command: str, flags: Mapping[str, Any], config_path: Path | None = None) -> None:
    cfg = resolve_config(command, flags, config_path)
    logger.debug("Resolved %s config: %s", command, cfg)
    COMMANDS[command][1](cfg)
