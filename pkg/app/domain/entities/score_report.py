"""Scoring results — ScoreReport and GainMap."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from app.domain.errors import ShapeError, ValidationError


@dataclass(frozen=True)
class ScoreReport:
    s_p: float
    s_r: float
    per_class_mse: dict[str, float] = field(default_factory=dict)
    n_test: int = 0
    s_bar: float = field(init=False)

    def __post_init__(self) -> None:
        if self.s_p < 0 or self.s_r < 0:
            raise ValidationError("Scores must be non-negative")
        object.__setattr__(self, "s_bar", combined_score(self.s_p, self.s_r))

    def verify(self) -> None:
        """Recompute S̄ and fail loudly if the stored value disagrees."""
        if self.s_bar != combined_score(self.s_p, self.s_r):
            raise ValidationError("Stored S̄ does not match (S_p + 3 S_r) / 4")


def combined_score(s_p: float, s_r: float) -> float:
    return (s_p + 3.0 * s_r) / 4.0


@dataclass(frozen=True, eq=False)
class GainMap:
    """gains[a, f] = ||denoiser(probe)|| / ||probe|| for amplitude a, frequency f."""

    amplitudes: np.ndarray
    frequencies: np.ndarray
    gains: np.ndarray

    def __post_init__(self) -> None:
        amplitudes = np.asarray(self.amplitudes, dtype=np.float64)
        frequencies = np.asarray(self.frequencies, dtype=np.float64)
        gains = np.asarray(self.gains, dtype=np.float64)
        if gains.shape != (amplitudes.size, frequencies.size):
            raise ShapeError(
                f"Gain grid shape {gains.shape} does not match "
                f"({amplitudes.size}, {frequencies.size})"
            )
        if np.any(gains < 0):
            raise ValidationError("Gains must be non-negative")
        object.__setattr__(self, "amplitudes", amplitudes)
        object.__setattr__(self, "frequencies", frequencies)
        object.__setattr__(self, "gains", gains)

    @property
    def shape(self) -> tuple[int, int]:
        return self.gains.shape
