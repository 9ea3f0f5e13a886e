"""Dataset directories: `<id>_clean` / `<id>_noisy` signal files plus manifest.csv."""

from __future__ import annotations

import logging
from pathlib import Path

from app.adapters.csv_loader.loader import read_csv, require_columns, to_csv_text
from app.adapters.csv_loader.normalizer import parse_float, parse_int
from app.adapters.files import atomic_write_text
from app.adapters.signal_io.codecs import FileSignalStore
from app.application.dto.records import DatasetEntry, DatasetRecord
from app.application.ports.dataset_store import DatasetStore
from app.domain.errors import FormatError
from app.domain.value_objects.enums import SignalFormat

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.csv"
MANIFEST_COLUMNS = ("id", "class", "sigma", "family", "seed")


class DirectoryDatasetStore(DatasetStore):
    def __init__(self, fmt: SignalFormat = SignalFormat.CSV):
        self._signals = FileSignalStore(fmt)

    def write(self, directory: Path, entries: list[DatasetEntry]) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for entry in entries:
            self._signals.write_signal(directory / f"{entry.record.id}_clean", entry.clean)
            self._signals.write_signal(directory / f"{entry.record.id}_noisy", entry.noisy)
        rows = (
            (r.id, r.class_label, r.sigma, r.family, r.seed) for r in (e.record for e in entries)
        )
        atomic_write_text(directory / MANIFEST_NAME, to_csv_text(MANIFEST_COLUMNS, rows))
        logger.debug("Wrote %d pairs to %s", len(entries), directory)

    def _find(self, directory: Path, stem: str) -> Path:
        for suffix in (".csv", ".bin"):
            candidate = directory / f"{stem}{suffix}"
            if candidate.exists():
                return candidate
        raise FormatError(f"{directory}: missing signal file for {stem}")

    def read(self, directory: Path) -> list[DatasetEntry]:
        directory = Path(directory)
        manifest = directory / MANIFEST_NAME
        if not manifest.exists():
            raise FormatError(f"{directory} has no {MANIFEST_NAME}")
        rows = read_csv(manifest)
        require_columns(rows, ("id", "class"), manifest)
        entries = []
        for row in rows:
            record = DatasetRecord(
                id=row["id"] or "",
                class_label=row["class"] or "",
                sigma=parse_float(row.get("sigma")),
                family=row.get("family"),
                seed=parse_int(row.get("seed")),
            )
            if not record.id or not record.class_label:
                raise FormatError(f"{manifest}: every row needs an id and a class")
            noisy = self._signals.read_signal(self._find(directory, f"{record.id}_noisy"))
            clean = self._signals.read_signal(self._find(directory, f"{record.id}_clean"))
            if len(noisy) != len(clean):
                raise FormatError(f"{directory}: {record.id} noisy/clean lengths differ")
            entries.append(DatasetEntry(record=record, noisy=noisy, clean=clean))
        return entries
