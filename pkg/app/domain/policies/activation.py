"""Double sharp sigmoid — the learnable soft threshold of every encoder node.

    eta(x, g) = x * [ 1 / (1 + e^{10 (x + g)}) + 1 / (1 + e^{-10 (x - g)}) ]

The bracket is ~0 inside (-g, g) and ~1 outside, so eta behaves like a smooth
hard threshold at |x| = g. For g = 0 the two logistic terms are complementary
and eta is the identity.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit

SHARPNESS = 10.0
EXPONENT_CLAMP = 500.0


def _gates(x: np.ndarray, gamma: np.ndarray | float) -> tuple[np.ndarray, np.ndarray]:
    lower = expit(np.clip(-SHARPNESS * (x + gamma), -EXPONENT_CLAMP, EXPONENT_CLAMP))
    upper = expit(np.clip(SHARPNESS * (x - gamma), -EXPONENT_CLAMP, EXPONENT_CLAMP))
    return lower, upper


def eta(x: np.ndarray | float, gamma: np.ndarray | float) -> np.ndarray:
    """Element-wise activation; *gamma* broadcasts against *x*."""
    x = np.asarray(x, dtype=np.float64)
    lower, upper = _gates(x, gamma)
    return x * (lower + upper)


def eta_grads(
    x: np.ndarray | float, gamma: np.ndarray | float
) -> tuple[np.ndarray, np.ndarray]:
    """(d eta / d x, d eta / d gamma), element-wise, same clamping as eta."""
    x = np.asarray(x, dtype=np.float64)
    lower, upper = _gates(x, gamma)
    slope_lower = SHARPNESS * lower * (1.0 - lower)
    slope_upper = SHARPNESS * upper * (1.0 - upper)
    d_dx = (lower + upper) + x * (slope_upper - slope_lower)
    d_dgamma = -x * (slope_lower + slope_upper)
    return d_dx, d_dgamma
