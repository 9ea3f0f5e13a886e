"""Evaluation use cases — scores over dataset directories, score sweeps and cosine gain maps."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from pathlib import Path

import numpy as np

from app.application.ports.dataset_store import DatasetStore
from app.application.ports.denoiser import Denoiser
from app.domain.entities.score_report import GainMap, ScoreReport
from app.domain.policies.scoring import gain_map, layer_sweep, noise_sweep, score
from app.domain.policies.shrinkage import fit_lambda
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import ClassSpec, HtConfig, NoiseSpec

logger = logging.getLogger(__name__)


class EvaluateUseCase:
    def __init__(self, datasets: DatasetStore):
        self._datasets = datasets

    def load_test_sets(self, directories: Sequence[Path]) -> dict[str, list[tuple[Signal, Signal]]]:
        """Pairs grouped by the manifest's class column, directories in order."""
        test_sets: dict[str, list[tuple[Signal, Signal]]] = {}
        for directory in directories:
            for entry in self._datasets.read(directory):
                test_sets.setdefault(entry.record.class_label, []).append(entry.pair)
        return test_sets

    def fit_threshold(
        self, train_dir: Path, layers: int, wavelet: str, workers: int = 1
    ) -> HtConfig:
        pairs = [e.pair for e in self._datasets.read(train_dir)]
        return fit_lambda(pairs, layers=layers, wavelet=wavelet, workers=workers)

    def execute(
        self, denoiser: Denoiser, directories: Sequence[Path], trained_classes: Sequence[str]
    ) -> ScoreReport:
        test_sets = self.load_test_sets(directories)
        report = score(denoiser.denoise, test_sets, trained_classes)
        report.verify()
        logger.info(
            "%s: S_p=%.4f S_r=%.4f S_bar=%.4f over %d pairs",
            denoiser.name,
            report.s_p,
            report.s_r,
            report.s_bar,
            report.n_test,
        )
        return report

    def sweep_layers(
        self,
        denoiser_for: Callable[[int], Denoiser],
        layer_counts: Sequence[int],
        directories: Sequence[Path],
        trained_classes: Sequence[str],
    ) -> list[dict[str, float]]:
        test_sets = self.load_test_sets(directories)
        rows = layer_sweep(
            lambda layers: denoiser_for(layers).denoise, layer_counts, test_sets, trained_classes
        )
        logger.info("Layer sweep over L=%s on %d classes", list(layer_counts), len(test_sets))
        return rows

    def sweep_noise(
        self,
        denoiser: Denoiser,
        class_specs: Sequence[ClassSpec],
        noise_specs: Sequence[NoiseSpec],
        count: int,
        trained_classes: Sequence[str],
    ) -> list[dict[str, float | str]]:
        """Scores on fresh pairs per noise spec; the denoiser stays fixed."""
        rows = noise_sweep(
            lambda _: denoiser.denoise, class_specs, noise_specs, count, trained_classes
        )
        logger.info("%s: noise sweep over %d settings", denoiser.name, len(noise_specs))
        return rows


class GainMapUseCase:
    def execute(
        self,
        denoiser: Denoiser,
        amplitude_count: int,
        amplitude_max: float,
        frequency_count: int,
        frequency_max: float,
        length: int,
        sample_rate: float,
    ) -> GainMap:
        amplitudes = np.linspace(0.0, amplitude_max, amplitude_count)
        frequencies = np.linspace(0.0, frequency_max, frequency_count)
        result = gain_map(denoiser.denoise, amplitudes, frequencies, length, sample_rate)
        logger.info("Gain map %dx%d for %s", *result.shape, denoiser.name)
        return result
