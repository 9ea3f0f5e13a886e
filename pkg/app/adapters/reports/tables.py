"""CSV reports and console tables: loss history, scores, gain maps, sweeps."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from pathlib import Path

from app.adapters.csv_loader.loader import to_csv_text
from app.adapters.files import atomic_write_text
from app.domain.entities.score_report import GainMap, ScoreReport
from app.domain.policies.training import EpochRecord

HISTORY_COLUMNS = ("epoch", "mean_loss", "learning_rate")
SCORE_COLUMNS = ("method", "s_p", "s_r", "s_bar", "n_test")


def write_history_csv(path: Path, history: Sequence[EpochRecord]) -> None:
    rows = ((r.epoch, r.mean_loss, r.learning_rate) for r in history)
    atomic_write_text(path, to_csv_text(HISTORY_COLUMNS, rows))


def score_rows(
    method: str, report: ScoreReport, per_class: bool = False
) -> tuple[list[str], list[list[object]]]:
    header = list(SCORE_COLUMNS)
    row: list[object] = [method, report.s_p, report.s_r, report.s_bar, report.n_test]
    if per_class:
        for label in sorted(report.per_class_mse):
            header.append(f"mse_{label}")
            row.append(report.per_class_mse[label])
    return header, [row]


def write_score_csv(path: Path, method: str, report: ScoreReport, per_class: bool = False) -> None:
    header, rows = score_rows(method, report, per_class)
    atomic_write_text(path, to_csv_text(header, rows))


def format_table(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    """Left-aligned plain-text table; floats with 6 significant digits."""

    def cell(v: object) -> str:
        return f"{v:.6g}" if isinstance(v, float) else str(v)

    cells = [list(header)] + [[cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def write_gain_map_csv(path: Path, gm: GainMap) -> None:
    header = ["amplitude", *(repr(float(f)) for f in gm.frequencies)]
    rows = ([float(a), *(float(g) for g in gains)] for a, gains in zip(gm.amplitudes, gm.gains))
    atomic_write_text(path, to_csv_text(header, rows))


def write_rows_csv(path: Path, rows: Sequence[Mapping[str, object]]) -> None:
    """Sweep rows (dicts sharing one key set) as CSV in first-row key order."""
    if not rows:
        atomic_write_text(path, "")
        return
    header = list(rows[0])
    atomic_write_text(path, to_csv_text(header, ([r[k] for k in header] for r in rows)))
