"""Audio pipeline numerics — resampling, foreground/background mixing, delta, folds."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction

import numpy as np
from scipy.signal import resample_poly

from app.domain.errors import DegenerateSignalError, LengthError, ParameterError
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import FoldPlan, MixSpec

logger = logging.getLogger(__name__)

DEFAULT_REFERENCE_WINDOW = 2000
DEFAULT_REFERENCE_WINDOWS = 1000


def resample_to(x: Signal, rate: float) -> Signal:
    """Polyphase down-sampling with scipy's anti-alias FIR; never up-samples."""
    if x.sample_rate_hz is None:
        raise ParameterError("Resampling needs a signal with a known sample rate")
    if not rate > 0:
        raise ParameterError(f"Target rate must be > 0, got {rate}")
    if rate > x.sample_rate_hz:
        raise ParameterError(
            f"Up-sampling from {x.sample_rate_hz} Hz to {rate} Hz is not supported"
        )
    if rate == x.sample_rate_hz:
        return x
    ratio = (Fraction(rate).limit_denominator(10**6) / Fraction(x.sample_rate_hz)).limit_denominator(
        10**6
    )
    out = resample_poly(x.samples, ratio.numerator, ratio.denominator, padtype="line")
    return Signal(out, float(rate))


def peak_normalize(x: np.ndarray) -> np.ndarray:
    peak = float(np.max(np.abs(x)))
    if peak == 0:
        raise DegenerateSignalError("Cannot peak-normalise a silent segment")
    return x / peak


def _check_rate(x: Signal, spec: MixSpec, role: str) -> None:
    if x.sample_rate_hz is not None and x.sample_rate_hz != spec.target_rate:
        raise ParameterError(
            f"{role} is at {x.sample_rate_hz} Hz, expected {spec.target_rate} Hz; resample first"
        )


def _crop_background(bg: Signal, spec: MixSpec, rng: np.random.Generator) -> np.ndarray:
    length = spec.target_length
    if len(bg) < length:
        raise LengthError(f"Background has {len(bg)} samples, needs at least {length}")
    if not np.any(bg.samples):
        logger.warning("Background recording is silent; mixing with zeros")
        return np.zeros(length)
    for _ in range(spec.max_retries):
        start = int(rng.integers(0, len(bg) - length + 1))
        crop = bg.samples[start : start + length]
        if np.any(crop):
            return crop.copy()
        logger.warning("Silent background crop at %d, redrawing", start)
    raise DegenerateSignalError(
        f"No non-silent background crop found in {spec.max_retries} attempts"
    )


def _crop_foreground(
    fg: Signal, spec: MixSpec, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Random non-null crop of the zero-padded foreground, shifted right by the lead.

    Returns (samples, support) where support marks samples taken from the recording.
    """
    length, lead, half = spec.target_length, spec.leading_background_samples, spec.target_length // 2
    padded = np.concatenate([np.zeros(half), fg.samples, np.zeros(half)])
    inside = np.concatenate([np.zeros(half, bool), np.ones(len(fg), bool), np.zeros(half, bool)])
    for _ in range(spec.max_retries):
        start = int(rng.integers(0, len(padded) - length + 1))
        crop = np.zeros(length)
        support = np.zeros(length, bool)
        crop[lead:] = padded[start : start + length - lead]
        support[lead:] = inside[start : start + length - lead]
        if np.any(crop):
            return crop, support
    raise DegenerateSignalError(
        f"No non-null foreground crop found in {spec.max_retries} attempts"
    )


def mix(
    fg: Signal, bg: Signal, spec: MixSpec, seed: int | np.random.Generator = 0
) -> tuple[Signal, Signal]:
    """(noisy, clean) with clean the peak-normalised foreground crop and
    noisy = clean + scaled background.

    With snr_db set, the background is scaled so that the foreground/background
    power ratio over the foreground support equals snr_db.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    _check_rate(fg, spec, "Foreground")
    _check_rate(bg, spec, "Background")

    background = _crop_background(bg, spec, rng)
    if not spec.raw_background and np.any(background):
        background = peak_normalize(background)
    background = background * spec.background_gain

    crop, support = _crop_foreground(fg, spec, rng)
    clean = peak_normalize(crop)

    if spec.snr_db is not None and np.any(background[support]):
        fg_power = float(np.mean(clean[support] ** 2))
        bg_power = float(np.mean(background[support] ** 2))
        background = background * np.sqrt(fg_power / (bg_power * 10.0 ** (spec.snr_db / 10.0)))

    rate = spec.target_rate
    return Signal(clean + background, rate), Signal(clean, rate)


def background_reference_norm(
    backgrounds: Sequence[Signal | np.ndarray],
    window: int = DEFAULT_REFERENCE_WINDOW,
    n_windows: int = DEFAULT_REFERENCE_WINDOWS,
    seed: int | np.random.Generator = 0,
) -> float:
    """Average norm of *n_windows* random *window*-sample background segments."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    usable = [
        b.samples if isinstance(b, Signal) else np.asarray(b, dtype=np.float64)
        for b in backgrounds
    ]
    usable = [b for b in usable if len(b) >= window]
    if window < 1 or n_windows < 1:
        raise ParameterError("window and n_windows must be >= 1")
    if not usable:
        raise LengthError(f"No background has at least {window} samples")
    norms = np.empty(n_windows)
    for k in range(n_windows):
        b = usable[int(rng.integers(0, len(usable)))]
        start = int(rng.integers(0, len(b) - window + 1))
        norms[k] = np.linalg.norm(b[start : start + window])
    return float(norms.mean())


def estimate_delta(noisy: Signal, leading: int, reference_norm: float) -> float:
    """||noisy[0:leading]|| / reference_norm."""
    if not reference_norm > 0:
        raise ParameterError(f"Reference norm must be > 0, got {reference_norm}")
    if not 1 <= leading <= len(noisy):
        raise ParameterError(f"Leading sample count must lie in [1, {len(noisy)}], got {leading}")
    return float(np.linalg.norm(noisy.samples[:leading]) / reference_norm)


def make_folds(labels: Iterable[str], plan: FoldPlan) -> list[list[str]]:
    """Seeded shuffle of the distinct labels cut into equal folds."""
    unique = sorted(set(labels))
    if len(unique) % plan.n_folds != 0:
        raise ParameterError(
            f"{len(unique)} classes cannot be split into {plan.n_folds} equal folds; "
            f"drop {len(unique) % plan.n_folds} class(es) first"
        )
    order = np.random.default_rng(plan.seed).permutation(len(unique))
    size = len(unique) // plan.n_folds
    return [
        sorted(unique[i] for i in order[f * size : (f + 1) * size]) for f in range(plan.n_folds)
    ]
