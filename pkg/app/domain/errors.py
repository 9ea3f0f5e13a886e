"""Domain exceptions — pure Python, no external dependencies.

The CLI maps the three families to distinct exit codes:
validation -> 2, runtime -> 3, I/O and file formats -> 4.
"""

from __future__ import annotations

from typing import Any


class LwptError(Exception):
    """Root of every error raised by the toolkit."""


# ─── Validation ──────────────────────────────────────────────────────


class ValidationError(LwptError, ValueError):
    """A parameter or precondition was violated."""


class LengthError(ValidationError):
    """Sequence length is incompatible with the requested operation."""


class ShapeError(ValidationError):
    """Tree, model or batch shapes do not agree."""


class ParameterError(ValidationError):
    """A scalar parameter is out of its admissible range."""


class UnsupportedFamilyError(ValidationError):
    """Unknown wavelet family identifier."""


class DegenerateSignalError(ValidationError):
    """The input has no usable variation (constant, silent or all-zero)."""


# ─── Runtime ─────────────────────────────────────────────────────────


class NumericalError(LwptError):
    """A non-finite value appeared in a gradient or loss."""

    def __init__(self, message: str, parameter: str | None = None):
        super().__init__(message)
        self.parameter = parameter


class TrainingDivergedError(LwptError):
    """Loss became non-finite; carries the last finite model and its history."""

    def __init__(self, message: str, model: Any, history: list):
        super().__init__(message)
        self.model = model
        self.history = history


# ─── I/O and formats ─────────────────────────────────────────────────


class FormatError(LwptError, ValueError):
    """A signal or model file is malformed or truncated."""


class VersionError(FormatError):
    """File magic or format version is not the one this build writes."""


class IngestionError(LwptError):
    """An audio file could not be decoded."""
