"""Audio manifest (path, role, label) and the WAV-backed AudioSource."""

from __future__ import annotations

import logging
from pathlib import Path

from app.adapters.audio.wav_io import ingest_wav, write_wav
from app.adapters.csv_loader.loader import read_csv, require_columns
from app.application.dto.records import AudioEntry
from app.application.ports.audio_source import AudioSource
from app.domain.errors import FormatError
from app.domain.value_objects.enums import MixRole
from app.domain.value_objects.signal import Signal

logger = logging.getLogger(__name__)


def load_audio_manifest(file_path: Path) -> list[AudioEntry]:
    """Relative paths are resolved against the manifest's directory."""
    file_path = Path(file_path)
    rows = read_csv(file_path)
    require_columns(rows, ("path", "role", "label"), file_path)
    entries = []
    for lineno, row in enumerate(rows, start=2):
        raw_path, raw_role, label = row.get("path"), row.get("role"), row.get("label")
        if not raw_path or not raw_role:
            raise FormatError(f"{file_path}:{lineno}: path and role are required")
        try:
            role = MixRole(raw_role.lower())
        except ValueError as e:
            raise FormatError(f"{file_path}:{lineno}: unknown role {raw_role!r}") from e
        path = Path(raw_path)
        if not path.is_absolute():
            path = file_path.parent / path
        entries.append(AudioEntry(path=path, role=role, label=label or ""))
    logger.info(
        "Manifest %s: %d foreground, %d background",
        file_path.name,
        sum(e.role is MixRole.FOREGROUND for e in entries),
        sum(e.role is MixRole.BACKGROUND for e in entries),
    )
    return entries


class WavAudioSource(AudioSource):
    def __init__(self, subtype: str = "pcm16"):
        self._subtype = subtype

    def read(self, path: Path) -> Signal:
        return ingest_wav(path)

    def write(self, path: Path, signal: Signal) -> None:
        write_wav(path, signal, self._subtype)

    def entries(self, manifest: Path) -> list[AudioEntry]:
        return load_audio_manifest(manifest)
