"""Run-config files: INI with an optional [common] section and one section per command.

Precedence, lowest first: model defaults, [common], [<command>], command-line flags.
Keys may use the flag spelling (`lr`, `lambda`, `stream-class`, ...); list values
are comma separated and `none` (or an empty value) means None.
"""

from __future__ import annotations

import configparser
import logging
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from app.domain.errors import ParameterError

logger = logging.getLogger(__name__)

COMMON_SECTION = "common"

# flag spelling -> run-config field
KEY_ALIASES = {
    "class": "class_id",
    "lambda": "threshold",
    "lr": "learning_rate",
    "batch": "batch_size",
    "stream_class": "stream_classes",
    "input": "inputs",
    "trained_class": "trained_classes",
    "label": "labels",
    "train_label": "train_labels",
    "lr_drop": "lr_drop_epochs",
    "sweep_sigma": "sweep_sigmas",
    "sweep_family": "sweep_families",
    "sweep_class": "sweep_classes",
}

LIST_KEYS = frozenset(
    {
        "inputs",
        "test",
        "trained_classes",
        "stream_classes",
        "train_labels",
        "layer_candidates",
        "lr_drop_epochs",
        "labels",
        "sweep_layers",
        "sweep_sigmas",
        "sweep_families",
        "sweep_classes",
    }
)


def canonical_key(key: str) -> str:
    key = key.strip().lower().replace("-", "_")
    return KEY_ALIASES.get(key, key)


def _convert(key: str, raw: str) -> Any:
    value = raw.strip()
    if key in LIST_KEYS:
        return [item.strip() for item in value.split(",") if item.strip()]
    if value.lower() in ("", "none"):
        return None
    return value


def read_sections(path: Path) -> dict[str, dict[str, Any]]:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as f:
            parser.read_file(f)
    except configparser.Error as e:
        raise ParameterError(f"Config file {path}: {e}") from e
    sections = {}
    for name in parser.sections():
        values = {}
        for key, raw in parser.items(name):
            key = canonical_key(key)
            values[key] = _convert(key, raw)
        sections[name.strip().lower()] = values
    return sections


def merge_config(
    command: str,
    flags: Mapping[str, Any],
    config_path: Path | None = None,
    defaults: Mapping[str, Any] | None = None,
) -> dict[str, Any]:
    """Flat dict ready for the command's run-config model."""
    merged: dict[str, Any] = dict(defaults or {})
    if config_path is not None:
        sections = read_sections(config_path)
        merged.update(sections.get(COMMON_SECTION, {}))
        merged.update(sections.get(command, {}))
        logger.debug("Config %s: sections %s", config_path, sorted(sections))
    merged.update({canonical_key(k): v for k, v in flags.items()})
    return merged
