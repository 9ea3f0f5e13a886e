"""Port interface for audio recordings and their manifest."""

from abc import ABC, abstractmethod
from pathlib import Path

from app.application.dto.records import AudioEntry
from app.domain.value_objects.signal import Signal


class AudioSource(ABC):
    @abstractmethod
    def read(self, path: Path) -> Signal:
        """Mono samples in [-1, 1] with the file's sample rate."""
        ...

    @abstractmethod
    def write(self, path: Path, signal: Signal) -> None:
        ...

    @abstractmethod
    def entries(self, manifest: Path) -> list[AudioEntry]:
        """Rows of the (path, role, label) manifest, paths resolved."""
        ...
