"""Audio mixing — foreground/background corpora turned into paired datasets."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from app.application.dto.records import AudioEntry, DatasetEntry, DatasetRecord
from app.application.ports.audio_source import AudioSource
from app.application.ports.dataset_store import DatasetStore
from app.domain.errors import ParameterError
from app.domain.policies.mixing import make_folds, mix, resample_to
from app.domain.policies.seeding import MIX_STREAM, derive_rng
from app.domain.value_objects.enums import MixRole
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import FoldPlan, MixSpec

logger = logging.getLogger(__name__)


class AudioMixer:
    """Draws random foreground/background mixes from a manifest.

    Recordings are read and resampled to the target rate once, on first use.
    """

    def __init__(
        self,
        audio: AudioSource,
        entries: Sequence[AudioEntry],
        spec: MixSpec,
        labels: Sequence[str] = (),
    ):
        self._audio = audio
        self._spec = spec
        wanted = set(labels)
        self.foregrounds = [
            e for e in entries if e.role is MixRole.FOREGROUND and (not wanted or e.label in wanted)
        ]
        self.backgrounds = [e for e in entries if e.role is MixRole.BACKGROUND]
        if not self.foregrounds:
            raise ParameterError(f"No foreground recordings for labels {sorted(wanted) or 'any'}")
        if not self.backgrounds:
            raise ParameterError("The manifest lists no background recordings")
        self._cache: dict[Path, Signal] = {}

    @property
    def spec(self) -> MixSpec:
        return self._spec

    def _load(self, entry: AudioEntry) -> Signal:
        if entry.path not in self._cache:
            self._cache[entry.path] = resample_to(self._audio.read(entry.path), self._spec.target_rate)
        return self._cache[entry.path]

    def draw(self, rng: np.random.Generator) -> tuple[Signal, Signal, str]:
        """(noisy, clean, foreground label)."""
        fg = self.foregrounds[int(rng.integers(0, len(self.foregrounds)))]
        bg = self.backgrounds[int(rng.integers(0, len(self.backgrounds)))]
        noisy, clean = mix(self._load(fg), self._load(bg), self._spec, rng)
        return noisy, clean, fg.label


class MixAudioUseCase:
    def __init__(self, audio: AudioSource, datasets: DatasetStore):
        self._audio = audio
        self._datasets = datasets

    def execute(
        self,
        manifest: Path,
        spec: MixSpec,
        count: int,
        seed: int,
        output: Path,
        labels: Sequence[str] = (),
    ) -> list[DatasetRecord]:
        """Mix k uses the generator derived from (seed, k), so datasets are reproducible."""
        mixer = AudioMixer(self._audio, self._audio.entries(manifest), spec, labels)
        entries = []
        for index in range(count):
            noisy, clean, label = mixer.draw(derive_rng(seed, index, MIX_STREAM))
            record = DatasetRecord(id=f"{label}_{index:05d}", class_label=label, seed=seed)
            entries.append(DatasetEntry(record=record, noisy=noisy, clean=clean))
        self._datasets.write(output, entries)
        logger.info("Mixed %d audio pairs into %s", count, output)
        return [e.record for e in entries]


class MakeFoldsUseCase:
    def __init__(self, audio: AudioSource):
        self._audio = audio

    def execute(self, manifest: Path, plan: FoldPlan) -> list[list[str]]:
        labels = [e.label for e in self._audio.entries(manifest) if e.role is MixRole.FOREGROUND]
        folds = make_folds(labels, plan)
        logger.info("Split %d classes into %d folds", sum(len(f) for f in folds), len(folds))
        return folds
