"""DenoiseSignalsUseCase — run a denoiser over signal files, dataset dirs or WAVs."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from app.application.ports.audio_source import AudioSource
from app.application.ports.dataset_store import SignalStore
from app.application.ports.denoiser import DeltaAdjustable, Denoiser
from app.domain.errors import ParameterError
from app.domain.value_objects.signal import Signal

logger = logging.getLogger(__name__)

SIGNAL_SUFFIXES = (".csv", ".bin")
AUDIO_SUFFIXES = (".wav",)


@dataclass(frozen=True)
class DenoisedFile:
    source: Path
    output: Path
    delta: float | None = None


def expand_inputs(inputs: list[Path]) -> list[Path]:
    """Files as given; a directory contributes its *_noisy signals and WAV files, sorted."""
    out: list[Path] = []
    for path in inputs:
        if path.is_dir():
            out.extend(
                sorted(
                    p
                    for p in path.iterdir()
                    if (p.suffix in SIGNAL_SUFFIXES and p.stem.endswith("_noisy"))
                    or p.suffix in AUDIO_SUFFIXES
                )
            )
        else:
            out.append(path)
    return out


def pad_to_multiple(signal: Signal, multiple: int) -> tuple[Signal, int]:
    """Zero-pad the tail to a multiple of *multiple*; returns the original length too."""
    extra = (-len(signal)) % multiple
    if not extra:
        return signal, len(signal)
    return signal.with_samples(np.concatenate([signal.samples, np.zeros(extra)])), len(signal)


class DenoiseSignalsUseCase:
    def __init__(self, signals: SignalStore, audio: AudioSource):
        self._signals = signals
        self._audio = audio

    def execute(
        self,
        inputs: list[Path],
        output_dir: Path,
        denoiser: Denoiser,
        *,
        auto_delta_leading: int | None = None,
    ) -> list[DenoisedFile]:
        if auto_delta_leading is not None and not isinstance(denoiser, DeltaAdjustable):
            raise ParameterError(f"{denoiser.name} does not support automatic delta")
        results = []
        for path in expand_inputs(inputs):
            is_audio = path.suffix.lower() in AUDIO_SUFFIXES
            noisy = self._audio.read(path) if is_audio else self._signals.read_signal(path)

            current, delta = denoiser, None
            if auto_delta_leading is not None:
                delta = denoiser.estimate_delta(noisy, auto_delta_leading)
                current = denoiser.with_delta(delta)
                logger.info("%s: estimated delta %.6g", path.name, delta)

            padded, length = pad_to_multiple(noisy, current.length_multiple)
            estimate = current.denoise(padded)
            estimate = estimate.with_samples(estimate.samples[:length])

            stem = path.stem.removesuffix("_noisy")
            if is_audio:
                target = output_dir / f"{stem}_denoised.wav"
                self._audio.write(target, estimate)
            else:
                target = self._signals.write_signal(output_dir / f"{stem}_denoised", estimate)
            results.append(DenoisedFile(source=path, output=target, delta=delta))
        logger.info("Denoised %d file(s) with %s", len(results), denoiser.name)
        return results
