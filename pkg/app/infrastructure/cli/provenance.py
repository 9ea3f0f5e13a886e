"""provenance.json — command, resolved run config and tool version.

No timestamps or host details, so identical runs write identical files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from app import __version__
from app.adapters.files import atomic_write_text

PROVENANCE_NAME = "provenance.json"


def provenance_document(
    command: str, config: BaseModel, results: dict[str, Any] | None = None
) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "command": command,
        "config": config.model_dump(mode="json"),
        "version": __version__,
    }
    if results:
        doc["results"] = results
    return doc


def write_provenance(
    directory: Path, command: str, config: BaseModel, results: dict[str, Any] | None = None
) -> Path:
    path = Path(directory) / PROVENANCE_NAME
    text = json.dumps(provenance_document(command, config, results), indent=2, sort_keys=True)
    atomic_write_text(path, text + "\n")
    return path
