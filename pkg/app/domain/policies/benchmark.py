"""Benchmark signal generators — randomised Block, Bumps, HeaviSine and Doppler.

A generated pair is (noisy, clean) with
    s      = normalize01(generator output)
    clean  = 3 * M(s)
    noisy  = clean + sigma * b
where M is an optional offset/scale modification and b unit-variance noise.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterator

import numpy as np

from app.domain.errors import DegenerateSignalError, ParameterError
from app.domain.policies.seeding import FUNCTION_STREAM, NOISE_STREAM, derive_rng
from app.domain.value_objects.enums import FunctionClass, Modification, NoiseFamily
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import ClassSpec, NoiseSpec

logger = logging.getLogger(__name__)

BLOCK_COUNT = 10
HEAVISINE_COUNT = 4
CORRUPTION_GAIN = 3.0
UNIFORM_HALF_WIDTH = math.sqrt(12.0) / 2.0
LAPLACE_SCALE = 1.0 / math.sqrt(2.0)


def _rng(spec: ClassSpec, rng: np.random.Generator | None) -> np.random.Generator:
    return rng if rng is not None else np.random.default_rng(spec.seed)


def partition(length: int, count: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Split [0, length) into *count* blocks at distinct random cut points.

    Returns (edges, widths): edges[0] = 0, edges[-1] = length, widths > 0.
    """
    if count < 1 or length < count:
        raise ParameterError(f"Cannot split length {length} into {count} non-empty blocks")
    cuts = np.sort(rng.choice(np.arange(1, length), size=count - 1, replace=False))
    edges = np.concatenate([[0], cuts, [length]]).astype(np.int64)
    return edges, np.diff(edges)


# ─── Generators ──────────────────────────────────────────────────────


def gen_block(spec: ClassSpec, rng: np.random.Generator | None = None) -> Signal:
    rng = _rng(spec, rng)
    _, widths = partition(spec.length, BLOCK_COUNT, rng)
    amplitudes = rng.standard_normal(BLOCK_COUNT)
    return Signal(np.repeat(amplitudes, widths))


def gen_bumps(spec: ClassSpec, rng: np.random.Generator | None = None) -> Signal:
    rng = _rng(spec, rng)
    edges, widths = partition(spec.length, BLOCK_COUNT, rng)
    amplitudes = rng.standard_normal(BLOCK_COUNT)
    centres = edges[:-1] + widths / 2.0
    t = np.arange(spec.length, dtype=np.float64)[:, None]
    bumps = np.abs(amplitudes) / (1.0 + (5.0 / widths) * np.abs(t - centres)) ** 4
    return Signal(bumps.sum(axis=1))


def gen_heavisine(spec: ClassSpec, rng: np.random.Generator | None = None) -> Signal:
    rng = _rng(spec, rng)
    _, widths = partition(spec.length, HEAVISINE_COUNT, rng)
    amplitudes = rng.standard_normal(HEAVISINE_COUNT)
    frequencies = rng.standard_normal(HEAVISINE_COUNT)
    phases = rng.standard_normal(HEAVISINE_COUNT)
    t = np.arange(spec.length, dtype=np.float64)
    block = np.repeat(np.arange(HEAVISINE_COUNT), widths)
    values = np.abs(amplitudes[block]) * np.sin(frequencies[block] * t / 200.0 + phases[block])
    return Signal(values)


def doppler_envelope(u: np.ndarray, z: float) -> np.ndarray:
    """[u (1 - u)]^(1/z) divided by its peak 0.25^(1/z), computed in log space."""
    with np.errstate(divide="ignore"):
        log_base = np.log(u * (1.0 - u)) - math.log(0.25)
    return np.exp(log_base / z)


def gen_doppler(spec: ClassSpec, rng: np.random.Generator | None = None) -> Signal:
    """Doppler chirp with random sharpness: pad with leading zeros, reverse half of
    the realisations, then crop to the target length.

    The envelope is rescaled by a constant so that small exponents 1/z do not
    underflow; normalize01 removes that constant.
    """
    rng = _rng(spec, rng)
    length = spec.length
    z = 10.0 * (1.0 - rng.random())
    pad = int(rng.integers(0, length // 2 + 1))
    reverse = bool(rng.random() < 0.5)
    u = np.arange(1, length + 1, dtype=np.float64) / length
    base = doppler_envelope(u, z) * np.sin(16.0 * math.pi * 1.2 / (20.0 * u + 0.2))
    values = np.concatenate([np.zeros(pad), base])
    if reverse:
        values = values[::-1]
    return Signal(values[:length])


GENERATORS: dict[FunctionClass, Callable[[ClassSpec, np.random.Generator | None], Signal]] = {
    FunctionClass.BLOCK: gen_block,
    FunctionClass.BUMPS: gen_bumps,
    FunctionClass.HEAVISINE: gen_heavisine,
    FunctionClass.DOPPLER: gen_doppler,
}


def generate(spec: ClassSpec, rng: np.random.Generator | None = None) -> Signal:
    return GENERATORS[spec.class_id](spec, rng)


# ─── Normalisation, noise, modifications ─────────────────────────────


def normalize01(x: Signal) -> Signal:
    lo, hi = float(np.min(x.samples)), float(np.max(x.samples))
    if hi == lo:
        raise DegenerateSignalError("Cannot normalise a constant signal")
    return x.with_samples((x.samples - lo) / (hi - lo))


def draw_noise(
    family: NoiseFamily, length: int, rng: np.random.Generator
) -> np.ndarray:
    """Unit-variance noise of the requested family."""
    family = NoiseFamily(family)
    if family is NoiseFamily.GAUSSIAN:
        return rng.standard_normal(length)
    if family is NoiseFamily.UNIFORM:
        return rng.uniform(-UNIFORM_HALF_WIDTH, UNIFORM_HALF_WIDTH, length)
    return rng.laplace(0.0, LAPLACE_SCALE, length)


def corrupt(s: Signal, noise: NoiseSpec, rng: np.random.Generator | None = None) -> Signal:
    """3 s + sigma b."""
    rng = rng if rng is not None else np.random.default_rng(noise.seed)
    b = draw_noise(noise.family, len(s), rng)
    return s.with_samples(CORRUPTION_GAIN * s.samples + noise.sigma * b)


def modify(s: Signal, modification: Modification) -> Signal:
    modification = Modification(modification)
    if modification is Modification.NONE:
        return s
    if modification is Modification.OFFSET_UP:
        return s.with_samples(s.samples + 1.5)
    if modification is Modification.OFFSET_DOWN:
        return s.with_samples(s.samples - 1.5)
    if modification is Modification.DOUBLE:
        return s.with_samples(s.samples * 2.0)
    return s.with_samples(s.samples * 0.5)


# ─── Pairs ───────────────────────────────────────────────────────────


def make_pair(
    class_spec: ClassSpec,
    noise_spec: NoiseSpec,
    index: int = 0,
    modification: Modification = Modification.NONE,
    *,
    stream: tuple[int, ...] = (),
) -> tuple[Signal, Signal]:
    """Realisation *index* as (noisy, clean); clean is the noise-free 3 M(s).

    *stream* inserts extra derivation keys (the epoch, for streaming sources)
    between the seed and the index.
    """
    if index < 0:
        raise ParameterError(f"Realisation index must be >= 0, got {index}")
    fn_rng = derive_rng(class_spec.seed, *stream, index, FUNCTION_STREAM)
    noise_rng = derive_rng(noise_spec.seed, *stream, index, NOISE_STREAM)
    s = modify(normalize01(generate(class_spec, fn_rng)), modification)
    noisy = corrupt(s, noise_spec, noise_rng)
    clean = s.with_samples(CORRUPTION_GAIN * s.samples)
    return noisy, clean


def iter_pairs(
    class_spec: ClassSpec,
    noise_spec: NoiseSpec,
    count: int,
    modification: Modification = Modification.NONE,
    start: int = 0,
) -> Iterator[tuple[Signal, Signal]]:
    if count < 0:
        raise ParameterError(f"Pair count must be >= 0, got {count}")
    for index in range(start, start + count):
        yield make_pair(class_spec, noise_spec, index, modification)
