"""CSV cell and header normalisation — BOM, stray spaces, decimal commas."""

from __future__ import annotations

import re


def normalize_column_name(name: str) -> str:
    """'\\ufeff Class Label ' -> 'class_label'."""
    name = name.replace("\ufeff", "").strip()
    name = re.sub(r"[\s\u00a0]+", "_", name)
    return re.sub(r"[^\w]", "", name.lower())


def clean_string(value: str | None) -> str | None:
    """Strip whitespace; empty strings become None."""
    if value is None:
        return None
    value = value.strip()
    return value or None


def parse_float(value: str | None) -> float | None:
    value = clean_string(value)
    if value is None or value.lower() in {"none", "nan"}:
        return None
    return float(value.replace(",", "."))


def parse_int(value: str | None) -> int | None:
    value = clean_string(value)
    if value is None or value.lower() == "none":
        return None
    return int(value)
