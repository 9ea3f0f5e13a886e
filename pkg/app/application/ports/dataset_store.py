"""Port interface for paired clean/noisy dataset directories."""

from abc import ABC, abstractmethod
from pathlib import Path

from app.application.dto.records import DatasetEntry
from app.domain.value_objects.signal import Signal


class SignalStore(ABC):
    @abstractmethod
    def read_signal(self, path: Path) -> Signal:
        ...

    @abstractmethod
    def write_signal(self, path: Path, signal: Signal) -> Path:
        """Write *signal* and return the path actually written."""
        ...


class DatasetStore(ABC):
    @abstractmethod
    def write(self, directory: Path, entries: list[DatasetEntry]) -> None:
        """Write `<id>_clean` / `<id>_noisy` files plus the manifest."""
        ...

    @abstractmethod
    def read(self, directory: Path) -> list[DatasetEntry]:
        """Entries in manifest order."""
        ...
