"""Port interfaces for denoisers."""

from abc import ABC, abstractmethod

from app.domain.value_objects.signal import Signal


class Denoiser(ABC):
    name: str = "denoiser"

    @property
    def length_multiple(self) -> int:
        """Input lengths must be a multiple of this (2**L for tree denoisers)."""
        return 1

    @abstractmethod
    def denoise(self, signal: Signal) -> Signal:
        """Return an estimate of the clean signal, same length and rate."""
        ...

    def __call__(self, signal: Signal) -> Signal:
        return self.denoise(signal)


class DeltaAdjustable(Denoiser):
    """A denoiser whose thresholds can be rescaled for a new noise level."""

    @abstractmethod
    def with_delta(self, delta: float) -> "DeltaAdjustable":
        ...

    @abstractmethod
    def estimate_delta(self, noisy: Signal, leading: int) -> float:
        """Delta from the background-only leading samples of *noisy*."""
        ...
