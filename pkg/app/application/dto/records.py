"""Records exchanged between use cases and adapters."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from app.domain.entities.lwpt_model import LwptModel
from app.domain.policies.training import AdamState, EpochRecord
from app.domain.value_objects.enums import MixRole
from app.domain.value_objects.signal import Signal


@dataclass(frozen=True)
class DatasetRecord:
    """One manifest row: id, class, sigma, family, seed."""

    id: str
    class_label: str
    sigma: float | None = None
    family: str | None = None
    seed: int | None = None


@dataclass(frozen=True, eq=False)
class DatasetEntry:
    record: DatasetRecord
    noisy: Signal
    clean: Signal

    @property
    def pair(self) -> tuple[Signal, Signal]:
        return self.noisy, self.clean


@dataclass(frozen=True)
class AudioEntry:
    path: Path
    role: MixRole
    label: str


@dataclass(frozen=True, eq=False)
class Checkpoint:
    model: LwptModel
    epoch: int
    state: AdamState | None = None
    history: list[EpochRecord] = field(default_factory=list)
