"""Baseline hard-threshold (HT) denoiser and threshold selection."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from app.domain.errors import ParameterError
from app.domain.policies.filter_bank import standard_kernel
from app.domain.policies.packet_transform import analyze, synthesize
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import DEFAULT_LAYERS, DEFAULT_WAVELET, HtConfig

logger = logging.getLogger(__name__)

# MAD of a standard normal sample
MAD_TO_SIGMA = 0.6745
GRID_SIZE = 50
GRID_SPAN = (1e-3, 10.0)


def hard_threshold(c: np.ndarray, lam: float) -> np.ndarray:
    """Keep coefficients with |c| > lam, zero the rest."""
    if lam < 0:
        raise ParameterError(f"Threshold must be >= 0, got {lam}")
    c = np.asarray(c, dtype=np.float64)
    return np.where(np.abs(c) > lam, c, 0.0)


def denoise_ht(x: Signal, cfg: HtConfig) -> Signal:
    """iWPT of the hard-thresholded layer-L coefficients."""
    x.require_divisible(cfg.layers)
    kernel = standard_kernel(cfg.wavelet)
    leaves = analyze(x.samples, kernel, cfg.layers)[-1]
    return x.with_samples(synthesize(hard_threshold(leaves, cfg.threshold), kernel))


def noise_scale_estimate(x: Signal | np.ndarray, wavelet: str = DEFAULT_WAVELET) -> float:
    """Median absolute deviation of the finest high-pass node, / 0.6745."""
    samples = x.samples if isinstance(x, Signal) else np.asarray(x, dtype=np.float64)
    detail = analyze(samples, standard_kernel(wavelet), 1)[-1][..., 1, :]
    return float(np.median(np.abs(detail)) / MAD_TO_SIGMA)


def default_grid(scale: float, size: int = GRID_SIZE) -> np.ndarray:
    """Log-spaced candidates over [1e-3, 10] x scale; a zero scale falls back to 1."""
    if not scale > 0:
        scale = 1.0
    return np.geomspace(GRID_SPAN[0] * scale, GRID_SPAN[1] * scale, size)


def fit_lambda(
    train: Sequence[tuple[Signal, Signal]],
    layers: int = DEFAULT_LAYERS,
    wavelet: str = DEFAULT_WAVELET,
    grid: Sequence[float] | None = None,
    workers: int = 1,
) -> HtConfig:
    """Grid-search the global threshold minimising mean squared error on *train*.

    Candidates are scored in ascending order and the first minimum wins, so ties
    go to the smaller threshold whatever the worker count.
    """
    if not train:
        raise ParameterError("fit_lambda needs at least one (noisy, clean) pair")
    noisy = np.stack([n.samples for n, _ in train])
    clean = np.stack([c.samples for _, c in train])
    if grid is None:
        scale = float(np.mean([noise_scale_estimate(row, wavelet) for row in noisy]))
        grid = default_grid(scale)
    candidates = sorted(float(g) for g in grid)
    if not candidates:
        raise ParameterError("Threshold grid must not be empty")
    if candidates[0] < 0:
        raise ParameterError(f"Threshold candidates must be >= 0, got {candidates[0]}")

    kernel = standard_kernel(wavelet)
    leaves = analyze(noisy, kernel, layers)[-1]

    def _mse(lam: float) -> float:
        estimate = synthesize(hard_threshold(leaves, lam), kernel)
        return float(np.mean(np.sum((estimate - clean) ** 2, axis=-1)))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            errors = list(pool.map(_mse, candidates))
    else:
        errors = [_mse(lam) for lam in candidates]

    best = int(np.argmin(errors))
    logger.info(
        "fit_lambda: lambda=%.6g (mse %.6g) over %d candidates",
        candidates[best],
        errors[best],
        len(candidates),
    )
    return HtConfig(threshold=candidates[best], layers=layers, wavelet=wavelet)
