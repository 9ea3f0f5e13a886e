"""Port interface for training data: a deterministic batch stream per epoch."""

from abc import ABC, abstractmethod
from collections.abc import Iterator

from app.domain.policies.training import PairBatch
from app.domain.value_objects.signal import Signal


class PairSource(ABC):
    @abstractmethod
    def epoch_batches(self, epoch: int) -> Iterator[PairBatch]:
        """Batches of 1-based *epoch*; the same epoch always yields the same batches."""
        ...

    @abstractmethod
    def sample_pairs(self, count: int) -> list[tuple[Signal, Signal]]:
        """A fixed, seed-determined sample of (noisy, clean) pairs."""
        ...

    def __call__(self, epoch: int) -> Iterator[PairBatch]:
        return self.epoch_batches(epoch)
