"""Evaluation — specialisation/robustness scores, cosine gain maps, layer selection."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Mapping, Sequence

import numpy as np

from app.domain.entities.score_report import GainMap, ScoreReport
from app.domain.errors import DegenerateSignalError, LengthError, ParameterError
from app.domain.policies.benchmark import iter_pairs
from app.domain.policies.packet_transform import analyze
from app.domain.value_objects.filter_kernel import FilterKernel
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import ClassSpec, NoiseSpec

logger = logging.getLogger(__name__)

SCORE_SCALE = 1e5
GAIN_MAP_LENGTH = 2**13
GAIN_MAP_RATE = 2.0**13

DenoiseFn = Callable[[Signal], Signal]
Pairs = Sequence[tuple[Signal, Signal]]


# ─── Scores ──────────────────────────────────────────────────────────


def squared_errors(denoise: DenoiseFn, pairs: Iterable[tuple[Signal, Signal]]) -> list[tuple[float, int]]:
    """(||denoise(noisy) - clean||^2, T) per pair, in input order."""
    out = []
    for noisy, clean in pairs:
        estimate = denoise(noisy)
        out.append((float(np.sum((estimate.samples - clean.samples) ** 2)), len(clean)))
    return out


def score_errors(
    errors_by_class: Mapping[str, Sequence[tuple[float, int]]],
    trained_classes: Iterable[str],
) -> ScoreReport:
    """Score from per-pair squared errors.

    S_p = 1e5 / n_in  * sum over inside pairs of ||e||^2 / T
    S_r = 1e5 / n_out * sum over outside pairs of ||e||^2 / T  (0 when nothing is outside)
    """
    trained = set(trained_classes)
    if not errors_by_class:
        raise ParameterError("Scoring needs at least one test class")
    if not trained:
        raise ParameterError("The training class set must not be empty")
    inside = [e / t for c in sorted(errors_by_class) if c in trained for e, t in errors_by_class[c]]
    outside = [
        e / t for c in sorted(errors_by_class) if c not in trained for e, t in errors_by_class[c]
    ]
    if not inside:
        raise ParameterError(
            f"No test pairs belong to the training classes {sorted(trained)}"
        )
    s_p = SCORE_SCALE * float(np.sum(inside)) / len(inside)
    s_r = SCORE_SCALE * float(np.sum(outside)) / len(outside) if outside else 0.0
    per_class = {
        c: float(np.mean([e / t for e, t in errors_by_class[c]])) if errors_by_class[c] else 0.0
        for c in sorted(errors_by_class)
    }
    n_test = sum(len(v) for v in errors_by_class.values())
    return ScoreReport(s_p=s_p, s_r=s_r, per_class_mse=per_class, n_test=n_test)


def score(
    denoise: DenoiseFn,
    test_sets: Mapping[str, Pairs],
    trained_classes: Iterable[str],
) -> ScoreReport:
    errors = {c: squared_errors(denoise, pairs) for c, pairs in test_sets.items()}
    return score_errors(errors, trained_classes)


def mean_squared_error(denoise: DenoiseFn, pairs: Pairs) -> float:
    """Mean over pairs of ||denoise(noisy) - clean||^2 / T."""
    errors = squared_errors(denoise, pairs)
    if not errors:
        raise ParameterError("Need at least one pair")
    return float(np.mean([e / t for e, t in errors]))


# ─── Gain map ────────────────────────────────────────────────────────


def cosine_probe(amplitude: float, frequency: float, length: int, sample_rate: float) -> Signal:
    t = np.arange(length, dtype=np.float64)
    return Signal(amplitude * np.cos(2.0 * np.pi * frequency * t / sample_rate), sample_rate)


def gain_map(
    denoise: DenoiseFn,
    amplitudes: Sequence[float],
    frequencies: Sequence[float],
    length: int = GAIN_MAP_LENGTH,
    sample_rate: float = GAIN_MAP_RATE,
) -> GainMap:
    """||denoise(a cos(2 pi f t / fs))|| / ||probe|| on the amplitude x frequency grid."""
    amplitudes = np.asarray(amplitudes, dtype=np.float64)
    frequencies = np.asarray(frequencies, dtype=np.float64)
    nyquist = sample_rate / 2.0
    if np.any(frequencies < 0) or np.any(frequencies > nyquist):
        raise ParameterError(f"Probe frequencies must lie in [0, {nyquist}] Hz")
    if np.any(amplitudes < 0):
        raise ParameterError("Probe amplitudes must be >= 0")
    gains = np.zeros((amplitudes.size, frequencies.size))
    for i, a in enumerate(amplitudes):
        for j, f in enumerate(frequencies):
            probe = cosine_probe(a, f, length, sample_rate)
            probe_norm = probe.norm()
            if a == 0 or probe_norm == 0:
                continue
            gains[i, j] = denoise(probe).norm() / probe_norm
    return GainMap(amplitudes=amplitudes, frequencies=frequencies, gains=gains)


# ─── Layer selection ─────────────────────────────────────────────────


def _shannon_entropy(coefficients: np.ndarray) -> float:
    energy = coefficients.reshape(-1) ** 2
    p = energy / energy.sum()
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz)))


def layer_entropy(signals: Sequence[Signal], kernel: FilterKernel, layers: int) -> float:
    """Mean Shannon entropy of the normalised layer-L energy distribution."""
    values = []
    for s in signals:
        if not np.any(s.samples):
            raise DegenerateSignalError("Entropy is undefined for an all-zero signal")
        values.append(_shannon_entropy(analyze(s.samples, kernel, layers)[-1]))
    return float(np.mean(values))


def select_layers_entropy(
    signals: Sequence[Signal], kernel: FilterKernel, candidates: Iterable[int]
) -> int:
    """Candidate layer count with the lowest mean entropy; ties go to the smaller count."""
    candidates = sorted(set(candidates))
    if not candidates:
        raise ParameterError("At least one layer candidate is required")
    if not signals:
        raise ParameterError("At least one signal is required")
    deepest = 2 ** candidates[-1]
    for s in signals:
        if len(s) % deepest != 0:
            raise LengthError(f"Signal length {len(s)} is not divisible by {deepest}")
    entropies = [layer_entropy(signals, kernel, layers) for layers in candidates]
    best = candidates[int(np.argmin(entropies))]
    logger.info(
        "Layer selection: %s",
        ", ".join(f"L={c}: {h:.4f}" for c, h in zip(candidates, entropies)),
    )
    return best


# ─── Sweeps ──────────────────────────────────────────────────────────


def layer_sweep(
    denoiser_for: Callable[[int], DenoiseFn],
    layer_counts: Iterable[int],
    test_sets: Mapping[str, Pairs],
    trained_classes: Iterable[str],
) -> list[dict[str, float]]:
    """One score row per layer count."""
    trained = list(trained_classes)
    rows = []
    for layers in layer_counts:
        report = score(denoiser_for(layers), test_sets, trained)
        rows.append({"layers": layers, "s_p": report.s_p, "s_r": report.s_r, "s_bar": report.s_bar})
    return rows


def noise_sweep(
    denoiser_for: Callable[[NoiseSpec], DenoiseFn],
    class_specs: Sequence[ClassSpec],
    noise_specs: Sequence[NoiseSpec],
    count: int,
    trained_classes: Iterable[str],
) -> list[dict[str, float | str]]:
    """One score row per noise level/family, test sets generated on the fly."""
    trained = list(trained_classes)
    rows: list[dict[str, float | str]] = []
    for noise in noise_specs:
        test_sets = {
            spec.class_id.value: list(iter_pairs(spec, noise, count)) for spec in class_specs
        }
        report = score(denoiser_for(noise), test_sets, trained)
        rows.append(
            {
                "family": noise.family.value,
                "sigma": noise.sigma,
                "s_p": report.s_p,
                "s_r": report.s_r,
                "s_bar": report.s_bar,
            }
        )
    return rows
