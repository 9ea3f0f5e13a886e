"""Frozen parameter records for the denoisers, generators and audio mixing."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from app.domain.errors import ParameterError
from app.domain.value_objects.enums import FunctionClass, NoiseFamily

# Full-scale benchmark defaults
DEFAULT_LENGTH = 2**13
DEFAULT_LAYERS = 5
DEFAULT_WAVELET = "db4"


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class HtConfig:
    """Baseline hard-threshold denoiser: one global threshold on layer L."""

    threshold: float
    layers: int = DEFAULT_LAYERS
    wavelet: str = DEFAULT_WAVELET

    def __post_init__(self) -> None:
        if not math.isfinite(self.threshold) or self.threshold < 0:
            raise ParameterError(f"Threshold must be finite and >= 0, got {self.threshold}")
        if self.layers < 1:
            raise ParameterError(f"Layer count must be >= 1, got {self.layers}")


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.0005
    batch_size: int = 8
    epochs: int = 500
    lr_drop_epochs: frozenset[int] = field(default_factory=lambda: frozenset({350, 450}))
    seed: int = 0
    samples_per_epoch: int = 16000

    def __post_init__(self) -> None:
        object.__setattr__(self, "lr_drop_epochs", frozenset(self.lr_drop_epochs))
        if not self.learning_rate > 0:
            raise ParameterError(f"Learning rate must be > 0, got {self.learning_rate}")
        if self.batch_size < 1:
            raise ParameterError(f"Batch size must be >= 1, got {self.batch_size}")
        if self.epochs < 0:
            raise ParameterError(f"Epoch count must be >= 0, got {self.epochs}")
        if self.samples_per_epoch < 1:
            raise ParameterError(
                f"samples_per_epoch must be >= 1, got {self.samples_per_epoch}"
            )
        if not 0 <= self.seed < 2**64:
            raise ParameterError(f"Seed must be an unsigned 64-bit integer, got {self.seed}")
        outside = sorted(e for e in self.lr_drop_epochs if not 1 <= e <= max(self.epochs, 0))
        if outside:
            raise ParameterError(
                f"Learning-rate drop epochs {outside} fall outside [1, {self.epochs}]"
            )

    @property
    def steps_per_epoch(self) -> int:
        """Optimizer steps per epoch; a short trailing batch counts as one."""
        return math.ceil(self.samples_per_epoch / self.batch_size)

    def learning_rate_at(self, epoch: int) -> float:
        """Rate used during 1-based *epoch*: divided by 10 after each drop epoch."""
        drops = sum(1 for d in self.lr_drop_epochs if d < epoch)
        return self.learning_rate / (10.0**drops)


@dataclass(frozen=True)
class ClassSpec:
    class_id: FunctionClass
    length: int = DEFAULT_LENGTH
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "class_id", FunctionClass(self.class_id))
        if not _is_power_of_two(self.length):
            raise ParameterError(f"Signal length must be a power of two, got {self.length}")


@dataclass(frozen=True)
class NoiseSpec:
    family: NoiseFamily = NoiseFamily.GAUSSIAN
    sigma: float = 0.2
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", NoiseFamily(self.family))
        if not math.isfinite(self.sigma) or self.sigma < 0:
            raise ParameterError(f"Noise level must be finite and >= 0, got {self.sigma}")


@dataclass(frozen=True)
class MixSpec:
    """Foreground/background mixing for the audio pipeline.

    raw_background=True is the unknown-SNR regime: the background crop is not
    peak-normalised but multiplied by background_gain, and snr_db is usually None
    so no SNR rescaling takes place.
    """

    target_length: int = DEFAULT_LENGTH
    target_rate: float = 8000.0
    snr_db: float | None = 0.0
    background_gain: float = 1.0
    leading_background_samples: int = 0
    raw_background: bool = False
    max_retries: int = 100

    def __post_init__(self) -> None:
        if not _is_power_of_two(self.target_length):
            raise ParameterError(
                f"Target length must be a power of two, got {self.target_length}"
            )
        if not self.target_rate > 0:
            raise ParameterError(f"Target rate must be > 0, got {self.target_rate}")
        if not 0 <= self.leading_background_samples < self.target_length:
            raise ParameterError(
                "leading_background_samples must lie in [0, target_length), got "
                f"{self.leading_background_samples}"
            )
        if self.snr_db is not None and not math.isfinite(self.snr_db):
            raise ParameterError(f"SNR must be finite, got {self.snr_db}")
        if not math.isfinite(self.background_gain) or self.background_gain < 0:
            raise ParameterError(f"Background gain must be >= 0, got {self.background_gain}")
        if self.max_retries < 1:
            raise ParameterError(f"max_retries must be >= 1, got {self.max_retries}")


@dataclass(frozen=True)
class FoldPlan:
    n_folds: int = 8
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_folds < 1:
            raise ParameterError(f"Fold count must be >= 1, got {self.n_folds}")
