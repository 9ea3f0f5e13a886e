"""Two-channel filter-bank primitives on circular (periodic) sequences.

Conventions fixed project-wide:
  conv_stride2(x, h)[n]  = sum_k h[k] * x[(2n - k) mod N]
  conv_transpose2(a, g)  = roll(g (*) up[a], -K), the adjoint of conv_stride2(., h)
                           when g = paraconjugate(h)

Every primitive broadcasts over leading axes, so a batch of signals or a whole
layer of packet nodes (..., nodes, N) can be filtered with a stack of kernels
(nodes, K + 1) in one call.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np
import pywt

from app.domain.errors import LengthError, UnsupportedFamilyError
from app.domain.value_objects.filter_kernel import FilterKernel

logger = logging.getLogger(__name__)

_FAMILY_ALIASES = {"haar": "haar", "db1": "haar"}


def _taps(h: FilterKernel | np.ndarray) -> np.ndarray:
    return h.taps if isinstance(h, FilterKernel) else np.asarray(h, dtype=np.float64)


def circular_convolve(x: np.ndarray, h: FilterKernel | np.ndarray) -> np.ndarray:
    """y[..., m] = sum_k h[..., k] * x[..., (m - k) mod N]."""
    x = np.asarray(x, dtype=np.float64)
    taps = _taps(h)
    out = np.zeros(np.broadcast_shapes(x.shape, taps.shape[:-1] + (1,)))
    for k in range(taps.shape[-1]):
        out += taps[..., k, None] * np.roll(x, k, axis=-1)
    return out


def conv_stride2(x: np.ndarray, h: FilterKernel | np.ndarray) -> np.ndarray:
    """Circular convolution followed by keeping the even outputs."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] % 2 != 0:
        raise LengthError(f"Strided convolution needs an even length, got {x.shape[-1]}")
    return circular_convolve(x, h)[..., ::2]


def upsample2(x: np.ndarray) -> np.ndarray:
    """up[x][2n] = x[n], up[x][2n + 1] = 0."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros(x.shape[:-1] + (2 * x.shape[-1],))
    out[..., ::2] = x
    return out


def conv_transpose2(a: np.ndarray, g: FilterKernel | np.ndarray) -> np.ndarray:
    """Up-sample, convolve with g, and advance by K so synthesis aligns with analysis."""
    taps = _taps(g)
    order = taps.shape[-1] - 1
    return np.roll(circular_convolve(upsample2(a), taps), -order, axis=-1)


def alternating_flip(h: FilterKernel) -> FilterKernel:
    """flip[h][k] = (-1)**k * h[K - k]."""
    taps = h.taps if isinstance(h, FilterKernel) else np.asarray(h, dtype=np.float64)
    if taps.size % 2 != 0:
        raise LengthError(f"Alternating flip needs an even-length kernel, got {taps.size}")
    signs = np.where(np.arange(taps.size) % 2 == 0, 1.0, -1.0)
    conjugate_mirror = isinstance(h, FilterKernel) and h.conjugate_mirror
    return FilterKernel(signs * taps[::-1], conjugate_mirror=conjugate_mirror)


def paraconjugate(h: FilterKernel) -> FilterKernel:
    """Delayed paraconjugate of a real kernel: tap reversal."""
    taps = h.taps if isinstance(h, FilterKernel) else np.asarray(h, dtype=np.float64)
    if taps.size % 2 != 0:
        raise LengthError(f"Paraconjugate needs an even-length kernel, got {taps.size}")
    conjugate_mirror = isinstance(h, FilterKernel) and h.conjugate_mirror
    return FilterKernel(taps[::-1], conjugate_mirror=conjugate_mirror)


def analysis_pair(h_lp: FilterKernel) -> np.ndarray:
    """[h, flip[h]] stacked as (2, K + 1): kernels for even and odd children."""
    return np.stack([h_lp.taps, alternating_flip(h_lp).taps])


def synthesis_pair(h_lp: FilterKernel) -> np.ndarray:
    """Delayed paraconjugates of the analysis pair, stacked as (2, K + 1)."""
    return analysis_pair(h_lp)[:, ::-1].copy()


@lru_cache(maxsize=64)
def _published_taps(family: str) -> tuple[float, ...]:
    try:
        wavelet = pywt.Wavelet(family)
    except ValueError as e:
        raise UnsupportedFamilyError(f"Unsupported wavelet family: {family!r}") from e
    if not wavelet.orthogonal:
        raise UnsupportedFamilyError(f"Wavelet family {family!r} is not orthogonal")
    # PyWavelets stores the synthesis low-pass in the orientation used here
    return tuple(float(t) for t in wavelet.rec_lo)


def standard_kernel(name: str) -> FilterKernel:
    """Published low-pass conjugate-mirror taps (haar, dbN, symN, coifN).

    Taps come from PyWavelets and are re-validated against the conjugate-mirror
    invariants on construction; a transcription fault raises ValidationError.
    """
    key = name.strip().lower()
    family = _FAMILY_ALIASES.get(key, key)
    if not family.startswith(("haar", "db", "sym", "coif")):
        raise UnsupportedFamilyError(f"Unsupported wavelet family: {name!r}")
    taps = _published_taps(family)
    return FilterKernel(np.array(taps), conjugate_mirror=True, name=key)
