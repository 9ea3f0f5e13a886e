"""Wavelet packet transform (WPT) and its inverse over a full binary tree."""

from __future__ import annotations

import numpy as np

from app.domain.entities.wpt_tree import WptTree
from app.domain.errors import LengthError, ParameterError
from app.domain.policies.filter_bank import (
    analysis_pair,
    conv_stride2,
    conv_transpose2,
    synthesis_pair,
)
from app.domain.value_objects.filter_kernel import FilterKernel
from app.domain.value_objects.signal import Signal


def _check_kernel(h_lp: FilterKernel) -> None:
    if not h_lp.conjugate_mirror:
        raise ParameterError("The packet transform needs a conjugate-mirror kernel")


def split_nodes(parents: np.ndarray, kernels: np.ndarray) -> np.ndarray:
    """One analysis layer: (..., n, N) parents -> (..., 2n, N / 2) children.

    *kernels* holds one row per child, shape (2n, K + 1).
    """
    return conv_stride2(np.repeat(parents, 2, axis=-2), kernels)


def merge_nodes(children: np.ndarray, kernels: np.ndarray) -> np.ndarray:
    """One synthesis layer: (..., 2n, N) children -> (..., n, 2N) parents."""
    contrib = conv_transpose2(children, kernels)
    shape = contrib.shape[:-2] + (contrib.shape[-2] // 2, 2, contrib.shape[-1])
    return contrib.reshape(shape).sum(axis=-2)


def analyze(x: np.ndarray, h_lp: FilterKernel, layers: int) -> list[np.ndarray]:
    """Array form of wpt_forward; *x* may carry leading batch axes.

    Returns one array per layer, layer l shaped (..., 2**l, T / 2**l).
    """
    x = np.asarray(x, dtype=np.float64)
    if layers < 1:
        raise ParameterError(f"Layer count must be >= 1, got {layers}")
    if x.shape[-1] % (2**layers) != 0:
        raise LengthError(
            f"Signal length {x.shape[-1]} is not divisible by 2**{layers} = {2**layers}"
        )
    pair = analysis_pair(h_lp)
    nodes = x[..., None, :]
    out = []
    for depth in range(1, layers + 1):
        nodes = split_nodes(nodes, np.tile(pair, (2 ** (depth - 1), 1)))
        out.append(nodes)
    return out


def synthesize(leaves: np.ndarray, h_lp: FilterKernel) -> np.ndarray:
    """Array form of wpt_inverse: (..., 2**L, T / 2**L) leaves -> (..., T)."""
    leaves = np.asarray(leaves, dtype=np.float64)
    n_nodes = leaves.shape[-2]
    layers = int(np.log2(n_nodes))
    if 2**layers != n_nodes or layers < 1:
        raise LengthError(f"Leaf count must be a power of two >= 2, got {n_nodes}")
    pair = synthesis_pair(h_lp)
    nodes = leaves
    for depth in range(layers, 0, -1):
        nodes = merge_nodes(nodes, np.tile(pair, (2 ** (depth - 1), 1)))
    return nodes[..., 0, :]


def wpt_forward(x: Signal, h_lp: FilterKernel, layers: int) -> WptTree:
    _check_kernel(h_lp)
    x.require_divisible(layers)
    return WptTree(tuple(analyze(x.samples, h_lp, layers)))


def wpt_inverse(tree: WptTree, h_lp: FilterKernel, sample_rate_hz: float | None = None) -> Signal:
    """Rebuild the signal from the deepest layer of *tree*."""
    _check_kernel(h_lp)
    return Signal(synthesize(tree.leaves, h_lp), sample_rate_hz)
