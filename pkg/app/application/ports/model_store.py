"""Port interface for model and checkpoint persistence."""

from abc import ABC, abstractmethod
from pathlib import Path

from app.application.dto.records import Checkpoint
from app.domain.entities.lwpt_model import LwptModel


class ModelStore(ABC):
    @abstractmethod
    def save(self, model: LwptModel, path: Path) -> None:
        ...

    @abstractmethod
    def load(self, path: Path) -> LwptModel:
        ...

    @abstractmethod
    def save_checkpoint(self, checkpoint: Checkpoint, path: Path) -> None:
        """Model plus optimizer state, epoch and loss history."""
        ...

    @abstractmethod
    def load_checkpoint(self, path: Path) -> Checkpoint:
        ...
