"""FilterKernel value object — finite real impulse response of even length."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from app.domain.errors import LengthError, ValidationError

# Tolerance for the unit-norm and double-shift orthogonality checks
CMF_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class FilterKernel:
    taps: np.ndarray
    conjugate_mirror: bool = False
    name: str | None = None

    def __post_init__(self) -> None:
        taps = np.array(self.taps, dtype=np.float64).reshape(-1)
        if taps.size < 2 or taps.size % 2 != 0:
            raise LengthError(f"Kernel length must be even and >= 2, got {taps.size}")
        if not np.all(np.isfinite(taps)):
            raise ValidationError("Kernel taps must all be finite")
        taps.setflags(write=False)
        object.__setattr__(self, "taps", taps)
        if self.conjugate_mirror and not is_conjugate_mirror(taps):
            raise ValidationError(
                f"Kernel {self.name or ''} is flagged conjugate_mirror but is not "
                "unit-norm and double-shift orthogonal"
            )

    def __len__(self) -> int:
        return int(self.taps.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FilterKernel):
            return NotImplemented
        return np.array_equal(self.taps, other.taps)

    @property
    def order(self) -> int:
        """K, the highest tap index."""
        return len(self) - 1


def is_conjugate_mirror(taps: np.ndarray, tol: float = CMF_TOLERANCE) -> bool:
    """Unit norm and <h, shift(h, 2m)> = 0 for every non-null shift m."""
    taps = np.asarray(taps, dtype=np.float64)
    autocorr = np.correlate(taps, taps, mode="full")
    centre = taps.size - 1
    if abs(autocorr[centre] - 1.0) > tol:
        return False
    even_lags = autocorr[centre % 2 :: 2]
    even_lags = np.delete(even_lags, centre // 2)
    return bool(np.all(np.abs(even_lags) <= tol))
