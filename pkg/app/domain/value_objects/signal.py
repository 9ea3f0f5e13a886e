"""Signal value object — immutable fixed-length real sequence."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from app.domain.errors import LengthError, ParameterError, ValidationError


@dataclass(frozen=True, eq=False)
class Signal:
    samples: np.ndarray
    sample_rate_hz: float | None = None

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=np.float64).reshape(-1)
        if samples.size == 0:
            raise LengthError("Signal must contain at least one sample")
        if not np.all(np.isfinite(samples)):
            raise ValidationError("Signal samples must all be finite")
        if self.sample_rate_hz is not None and not self.sample_rate_hz > 0:
            raise ParameterError(f"Sample rate must be positive, got {self.sample_rate_hz}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return int(self.samples.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Signal):
            return NotImplemented
        return self.sample_rate_hz == other.sample_rate_hz and np.array_equal(
            self.samples, other.samples
        )

    def norm(self) -> float:
        return float(np.linalg.norm(self.samples))

    def with_samples(self, samples: np.ndarray) -> Signal:
        """Same metadata, new samples."""
        return Signal(samples, self.sample_rate_hz)

    def require_divisible(self, layers: int) -> None:
        """Raise LengthError unless the length is divisible by 2**layers."""
        if len(self) % (2**layers) != 0:
            raise LengthError(
                f"Signal length {len(self)} is not divisible by 2**{layers} = {2**layers}"
            )
