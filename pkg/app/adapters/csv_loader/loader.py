"""CSV loader — reads manifests with delimiter sniffing and header normalisation."""

from __future__ import annotations

import csv
import io
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path

from app.adapters.csv_loader.normalizer import clean_string, normalize_column_name
from app.domain.errors import FormatError

logger = logging.getLogger(__name__)


def _sniff_dialect(sample: str) -> type[csv.Dialect] | csv.Dialect:
    """Comma, semicolon or tab, whichever the header line uses most."""
    if not sample:
        return csv.excel
    first_line = sample.splitlines()[0]
    counts = {d: first_line.count(d) for d in (",", ";", "\t")}
    best = max(counts, key=counts.get)
    if counts[best] == 0:
        return csv.excel

    class _Dialect(csv.excel):
        delimiter = best

    return _Dialect


def read_csv(file_path: Path, encoding: str = "utf-8-sig") -> list[dict[str, str | None]]:
    """Rows as dicts keyed by normalised column names."""
    try:
        with open(file_path, encoding=encoding, newline="") as f:
            sample = f.read(4096)
            f.seek(0)
            reader = csv.DictReader(f, dialect=_sniff_dialect(sample))
            if reader.fieldnames is None:
                raise FormatError(f"CSV file {file_path} has no header row")
            col_map = {col: normalize_column_name(col) for col in reader.fieldnames}
            rows = [
                {col_map[k]: clean_string(v) for k, v in raw.items() if k is not None}
                for raw in reader
            ]
    except csv.Error as e:
        raise FormatError(f"Malformed CSV {file_path}: {e}") from e
    logger.debug("Loaded %d rows from %s (columns: %s)", len(rows), file_path.name, list(col_map.values()))
    return rows


def require_columns(rows: list[dict], columns: Sequence[str], file_path: Path) -> None:
    if rows and (missing := [c for c in columns if c not in rows[0]]):
        raise FormatError(f"{file_path.name} is missing column(s) {missing}")


def _cell(v: object) -> object:
    if v is None:
        return ""
    return repr(float(v)) if isinstance(v, float) else v


def to_csv_text(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """Comma-separated text with '\\n' line endings, floats in repr precision."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()
