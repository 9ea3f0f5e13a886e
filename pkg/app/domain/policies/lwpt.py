"""Learnable WPT — encoder/decoder passes, WPT-mimicking init, delta modification.

Encoder, layer l, node i (parent i // 2):
    pre_l^i  = theta_l^i (*)v2 y_{l-1}^{i // 2}
    y_l^i    = eta(pre_l^i, gamma_l^i)
Decoder, from the leaves (y_L) back to the root:
    yhat_{l-1}^p = sum over children i in {2p, 2p + 1} of conv_transpose2(yhat_l^i, beta_l^i)
"""

from __future__ import annotations

import logging
import math

import numpy as np

from app.domain.entities.lwpt_model import LwptActivations, LwptModel, ParameterSet
from app.domain.errors import LengthError, ParameterError, ShapeError
from app.domain.policies.activation import eta
from app.domain.policies.filter_bank import analysis_pair, synthesis_pair
from app.domain.policies.packet_transform import merge_nodes, split_nodes
from app.domain.value_objects.filter_kernel import FilterKernel
from app.domain.value_objects.signal import Signal

logger = logging.getLogger(__name__)


def expected_param_count(layers: int, kernel_len: int) -> int:
    """n_p = sum_l 2**l (K + 1) encoder taps + the same for the decoder + sum_l 2**l biases."""
    nodes = sum(2**depth for depth in range(1, layers + 1))
    return 2 * nodes * kernel_len + nodes


def param_count(m: ParameterSet) -> int:
    return expected_param_count(m.layers, m.kernel_len)


def init_wpt(layers: int, kernel_len: int, h_pr: FilterKernel) -> LwptModel:
    """Model that behaves exactly like the WPT/iWPT pair built on *h_pr*.

    Encoder kernels alternate h_pr and its alternating flip; decoder kernels are
    their delayed paraconjugates; every bias is zero.
    """
    if layers < 1:
        raise ParameterError(f"Layer count must be >= 1, got {layers}")
    if len(h_pr) != kernel_len:
        raise ParameterError(
            f"Kernel {h_pr.name or ''} has {len(h_pr)} taps, expected kernel_len={kernel_len}"
        )
    if not h_pr.conjugate_mirror:
        raise ParameterError("WPT initialisation needs a conjugate-mirror kernel")
    analysis, synthesis = analysis_pair(h_pr), synthesis_pair(h_pr)
    theta = tuple(np.tile(analysis, (2 ** (d - 1), 1)) for d in range(1, layers + 1))
    beta = tuple(np.tile(synthesis, (2 ** (d - 1), 1)) for d in range(1, layers + 1))
    gamma = tuple(np.zeros(2**d) for d in range(1, layers + 1))
    metadata = {
        "wavelet": h_pr.name,
        "param_count": expected_param_count(layers, kernel_len),
    }
    return LwptModel(theta, beta, gamma, metadata)


def delta_modify(m: LwptModel, delta: float) -> LwptModel:
    """Scale every bias by *delta*; kernels are shared with *m*."""
    if not math.isfinite(delta):
        raise ParameterError(f"delta must be finite, got {delta}")
    if delta == 1.0:
        return m
    gamma = tuple(g * delta for g in m.gamma)
    scale = m.metadata.get("delta", 1.0) * delta
    return LwptModel(m.theta, m.beta, gamma, {**m.metadata, "delta": scale})


def _as_batch(x: Signal | np.ndarray) -> np.ndarray:
    samples = x.samples if isinstance(x, Signal) else np.asarray(x, dtype=np.float64)
    if samples.ndim == 1:
        samples = samples[None, :]
    if samples.ndim != 2:
        raise ShapeError(f"Expected a signal or a (batch, T) array, got shape {samples.shape}")
    return samples


def encode(x: Signal | np.ndarray, m: ParameterSet) -> LwptActivations:
    """Encoder pass for one signal or a (B, T) batch; keeps pre- and post-activations."""
    inputs = _as_batch(x)
    if inputs.shape[-1] % (2**m.layers) != 0:
        raise LengthError(
            f"Signal length {inputs.shape[-1]} is not divisible by 2**{m.layers}"
        )
    pre, post = [], []
    nodes = inputs[:, None, :]
    for theta, gamma in zip(m.theta, m.gamma):
        z = split_nodes(nodes, theta)
        nodes = eta(z, gamma[:, None])
        pre.append(z)
        post.append(nodes)
    return LwptActivations(inputs=inputs, pre=tuple(pre), post=tuple(post))


def reconstruct(acts: LwptActivations, m: ParameterSet) -> LwptActivations:
    """Decoder pass; returns *acts* with recon[0..L] filled in."""
    if acts.layers != m.layers:
        raise ShapeError(f"Activations have {acts.layers} layers, model has {m.layers}")
    leaves = acts.leaves
    if leaves.shape[-2] != 2**m.layers:
        raise ShapeError(f"Leaves carry {leaves.shape[-2]} nodes, expected {2**m.layers}")
    recon = [leaves]
    nodes = leaves
    for beta in reversed(m.beta):
        nodes = merge_nodes(nodes, beta)
        recon.append(nodes)
    return LwptActivations(
        inputs=acts.inputs, pre=acts.pre, post=acts.post, recon=tuple(reversed(recon))
    )


def decode(acts: LwptActivations, m: ParameterSet) -> np.ndarray:
    """Decoder output, shape (B, T)."""
    return reconstruct(acts, m).output


def forward(x: Signal | np.ndarray, m: ParameterSet) -> LwptActivations:
    return reconstruct(encode(x, m), m)


def denoise(x: Signal, m: ParameterSet) -> Signal:
    return x.with_samples(decode(encode(x, m), m)[0])
