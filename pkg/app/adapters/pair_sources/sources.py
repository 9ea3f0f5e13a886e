"""PairSource implementations: a fixed dataset, the benchmark stream, audio mixes.

Every source derives its randomness from (seed, epoch, ...) so that epoch e's
batches do not depend on which epochs ran before; resumed training sees the
same data as an uninterrupted run.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence

import numpy as np

from app.application.ports.pair_source import PairSource
from app.application.use_cases.mix_audio import AudioMixer
from app.domain.errors import ParameterError
from app.domain.policies.benchmark import make_pair
from app.domain.policies.seeding import MIX_STREAM, SHUFFLE_STREAM, derive_rng
from app.domain.policies.training import PairBatch
from app.domain.value_objects.enums import Modification
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import ClassSpec, NoiseSpec

logger = logging.getLogger(__name__)

Pair = tuple[Signal, Signal]

# Epoch key reserved for fixed samples (training epochs are 1-based)
SAMPLE_EPOCH = 0


def _check_sizes(batch_size: int, samples_per_epoch: int | None) -> None:
    if batch_size < 1:
        raise ParameterError(f"Batch size must be >= 1, got {batch_size}")
    if samples_per_epoch is not None and samples_per_epoch < 1:
        raise ParameterError(f"samples_per_epoch must be >= 1, got {samples_per_epoch}")


def _batched(pairs: Iterator[Pair], batch_size: int) -> Iterator[PairBatch]:
    chunk: list[Pair] = []
    for pair in pairs:
        chunk.append(pair)
        if len(chunk) == batch_size:
            yield PairBatch.from_pairs(chunk)
            chunk = []
    if chunk:
        yield PairBatch.from_pairs(chunk)


class FixedPairSource(PairSource):
    """Shuffled passes over an in-memory dataset.

    Without samples_per_epoch an epoch is one pass (the last batch may be short);
    with it, consecutive shuffled passes are concatenated and cut to
    samples_per_epoch // batch_size full batches.
    """

    def __init__(
        self,
        pairs: Sequence[Pair],
        batch_size: int,
        seed: int = 0,
        samples_per_epoch: int | None = None,
    ):
        if not pairs:
            raise ParameterError("The training set is empty")
        _check_sizes(batch_size, samples_per_epoch)
        self._pairs = list(pairs)
        self._batch_size = batch_size
        self._seed = seed
        self._samples = samples_per_epoch

    def __len__(self) -> int:
        return len(self._pairs)

    def _order(self, epoch: int) -> np.ndarray:
        rng = derive_rng(self._seed, epoch, SHUFFLE_STREAM)
        n = len(self._pairs)
        if self._samples is None:
            return rng.permutation(n)
        wanted = max(1, self._samples // self._batch_size) * self._batch_size
        passes = -(-wanted // n)
        return np.concatenate([rng.permutation(n) for _ in range(passes)])[:wanted]

    def epoch_batches(self, epoch: int) -> Iterator[PairBatch]:
        return _batched((self._pairs[int(i)] for i in self._order(epoch)), self._batch_size)

    def sample_pairs(self, count: int) -> list[Pair]:
        order = derive_rng(self._seed, SAMPLE_EPOCH, SHUFFLE_STREAM).permutation(len(self._pairs))
        return [self._pairs[int(i)] for i in order[:count]]


class BenchmarkStreamSource(PairSource):
    """Fresh synthetic pairs every epoch, cycling through the function classes."""

    def __init__(
        self,
        class_specs: Sequence[ClassSpec],
        noise_spec: NoiseSpec,
        batch_size: int,
        samples_per_epoch: int,
        modification: Modification = Modification.NONE,
    ):
        if not class_specs:
            raise ParameterError("At least one function class is needed")
        _check_sizes(batch_size, samples_per_epoch)
        self._classes = list(class_specs)
        self._noise = noise_spec
        self._batch_size = batch_size
        self._samples = samples_per_epoch
        self._modification = modification

    def _pairs(self, epoch: int, count: int) -> Iterator[Pair]:
        for k in range(count):
            spec = self._classes[k % len(self._classes)]
            yield make_pair(spec, self._noise, k, self._modification, stream=(epoch,))

    def epoch_batches(self, epoch: int) -> Iterator[PairBatch]:
        count = max(1, self._samples // self._batch_size) * self._batch_size
        return _batched(self._pairs(epoch, count), self._batch_size)

    def sample_pairs(self, count: int) -> list[Pair]:
        return list(self._pairs(SAMPLE_EPOCH, count))


class AudioMixSource(PairSource):
    """Random foreground/background mixes drawn on the fly."""

    def __init__(self, mixer: AudioMixer, batch_size: int, samples_per_epoch: int, seed: int = 0):
        _check_sizes(batch_size, samples_per_epoch)
        self._mixer = mixer
        self._batch_size = batch_size
        self._samples = samples_per_epoch
        self._seed = seed

    def _pairs(self, epoch: int, count: int) -> Iterator[Pair]:
        for k in range(count):
            noisy, clean, _ = self._mixer.draw(derive_rng(self._seed, epoch, k, MIX_STREAM))
            yield noisy, clean

    def epoch_batches(self, epoch: int) -> Iterator[PairBatch]:
        count = max(1, self._samples // self._batch_size) * self._batch_size
        return _batched(self._pairs(epoch, count), self._batch_size)

    def sample_pairs(self, count: int) -> list[Pair]:
        return list(self._pairs(SAMPLE_EPOCH, count))
