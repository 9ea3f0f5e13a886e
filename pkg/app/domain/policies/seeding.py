"""Deterministic seed derivation.

Every random draw in the toolkit comes from a generator built as
default_rng([seed, *keys]) where keys name the draw, e.g.
  realisation k of a dataset:   [seed, k, 0] for the function, [seed, k, 1] for the noise
  streaming epoch e, pair k:    [seed, e, k, 0] / [seed, e, k, 1]
  shuffles of epoch e:          [seed, e, 2]
  audio mix k:                  [seed, k, 3]
No entropy is taken from the environment.
"""

from __future__ import annotations

import numpy as np

from app.domain.errors import ParameterError

FUNCTION_STREAM = 0
NOISE_STREAM = 1
SHUFFLE_STREAM = 2
MIX_STREAM = 3


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    if seed < 0 or any(k < 0 for k in keys):
        raise ParameterError(f"Seeds and derivation keys must be non-negative, got {seed}, {keys}")
    return np.random.default_rng([int(seed), *(int(k) for k in keys)])
