"""Training — summed squared-error loss, hand-derived reverse pass, Adam, epoch loop.

The computation graph is fixed (strided circular convolution, element-wise eta,
up-sampled convolution), so the backward pass is written out layer by layer
rather than taped. grad_check compares it against central differences.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from itertools import islice
from dataclasses import dataclass, field

import numpy as np

from app.domain.entities.lwpt_model import Gradients, LwptModel, ParameterSet
from app.domain.errors import (
    NumericalError,
    ParameterError,
    ShapeError,
    TrainingDivergedError,
)
from app.domain.policies.activation import eta_grads
from app.domain.policies.filter_bank import conv_transpose2, upsample2
from app.domain.policies.lwpt import forward
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import TrainConfig

logger = logging.getLogger(__name__)

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


# ─── Batches ──────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class PairBatch:
    """B (noisy, clean) pairs stacked as two (B, T) arrays."""

    noisy: np.ndarray
    clean: np.ndarray

    def __post_init__(self) -> None:
        noisy = np.atleast_2d(np.asarray(self.noisy, dtype=np.float64))
        clean = np.atleast_2d(np.asarray(self.clean, dtype=np.float64))
        if noisy.ndim != 2 or noisy.shape != clean.shape:
            raise ShapeError(
                f"Noisy and clean batches must share a (B, T) shape, got "
                f"{noisy.shape} and {clean.shape}"
            )
        object.__setattr__(self, "noisy", noisy)
        object.__setattr__(self, "clean", clean)

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[Signal | np.ndarray, Signal | np.ndarray]]) -> PairBatch:
        if not pairs:
            raise ParameterError("A batch needs at least one pair")

        def _samples(s: Signal | np.ndarray) -> np.ndarray:
            return s.samples if isinstance(s, Signal) else np.asarray(s, dtype=np.float64)

        lengths = {len(_samples(n)) for n, _ in pairs} | {len(_samples(c)) for _, c in pairs}
        if len(lengths) != 1:
            raise ShapeError(f"All signals in a batch must share one length, got {sorted(lengths)}")
        return cls(
            noisy=np.stack([_samples(n) for n, _ in pairs]),
            clean=np.stack([_samples(c) for _, c in pairs]),
        )

    def __len__(self) -> int:
        return int(self.noisy.shape[0])


# ─── Loss and gradients ──────────────────────────────────────────────


def loss(m: ParameterSet, batch: PairBatch) -> float:
    """sum_n ||decode(encode(noisy_n)) - clean_n||^2, summed over the batch."""
    out = forward(batch.noisy, m).output
    return float(np.sum((out - batch.clean) ** 2))


def _check_finite(name: str, values: Iterable[np.ndarray]) -> None:
    for depth, arr in enumerate(values, start=1):
        if not np.all(np.isfinite(arr)):
            bad = tuple(int(i) for i in np.argwhere(~np.isfinite(arr))[0])
            where = f"{name}[layer {depth}]{list(bad)}"
            raise NumericalError(f"Non-finite gradient at {where}", parameter=where)


def backward(m: ParameterSet, batch: PairBatch) -> tuple[float, Gradients]:
    """Loss value and its exact partials with respect to every tap and bias."""
    acts = forward(batch.noisy, m)
    resid = acts.output - batch.clean
    value = float(np.sum(resid**2))
    order = m.kernel_len - 1
    layers = m.layers

    # Decoder: recon[l - 1] = merge(conv_transpose2(recon[l], beta_l)), walked root -> leaves
    d_beta: list[np.ndarray] = [np.empty(0)] * layers
    g_parent = 2.0 * resid[:, None, :]
    for depth in range(1, layers + 1):
        beta = m.beta[depth - 1]
        children = acts.recon[depth]
        g_contrib = np.repeat(g_parent, 2, axis=-2)
        up = upsample2(children)
        grad = np.empty_like(beta)
        g_up = np.zeros_like(up)
        for j in range(m.kernel_len):
            grad[:, j] = np.sum(g_contrib * np.roll(up, j - order, axis=-1), axis=(0, 2))
            g_up += beta[:, j, None] * np.roll(g_contrib, order - j, axis=-1)
        d_beta[depth - 1] = grad
        g_parent = g_up[..., ::2]

    # Encoder: post_l = eta(theta_l (*)v2 repeat(post_{l-1})), walked leaves -> root
    d_theta: list[np.ndarray] = [np.empty(0)] * layers
    d_gamma: list[np.ndarray] = [np.empty(0)] * layers
    g_post = g_parent
    for depth in range(layers, 0, -1):
        theta, gamma = m.theta[depth - 1], m.gamma[depth - 1]
        d_dx, d_dgamma = eta_grads(acts.pre[depth - 1], gamma[:, None])
        d_gamma[depth - 1] = np.sum(g_post * d_dgamma, axis=(0, 2))
        g_pre = g_post * d_dx
        parents_prev = acts.post[depth - 2] if depth > 1 else acts.inputs[:, None, :]
        parents = np.repeat(parents_prev, 2, axis=-2)
        grad = np.empty_like(theta)
        for k in range(m.kernel_len):
            grad[:, k] = np.sum(g_pre * np.roll(parents, k, axis=-1)[..., ::2], axis=(0, 2))
        d_theta[depth - 1] = grad
        if depth > 1:
            g_parents = conv_transpose2(g_pre, theta[:, ::-1])
            shape = g_parents.shape[:-2] + (g_parents.shape[-2] // 2, 2, g_parents.shape[-1])
            g_post = g_parents.reshape(shape).sum(axis=-2)

    _check_finite("theta", d_theta)
    _check_finite("beta", d_beta)
    _check_finite("gamma", d_gamma)
    return value, Gradients(tuple(d_theta), tuple(d_beta), tuple(d_gamma))


def grad_check(m: ParameterSet, batch: PairBatch, step: float = 1e-6) -> float:
    """Worst relative gap between backward() and central differences.

    The step is relative to each parameter's magnitude; the denominator is
    floored at 1e-3 of the largest analytic partial so that exact zeros do not
    amplify rounding noise.
    """
    _, grads = backward(m, batch)
    analytic = grads.flatten()
    flat = m.flatten()
    probe = ParameterSet(m.theta, m.beta, m.gamma)
    numeric = np.empty_like(flat)
    for idx in range(flat.size):
        h = step * max(1.0, abs(flat[idx]))
        shifted = flat.copy()
        shifted[idx] = flat[idx] + h
        plus = loss(probe.unflatten(shifted), batch)
        shifted[idx] = flat[idx] - h
        minus = loss(probe.unflatten(shifted), batch)
        numeric[idx] = (plus - minus) / (2.0 * h)
    floor = 1e-3 * max(1.0, float(np.max(np.abs(analytic))))
    denom = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), floor)
    return float(np.max(np.abs(analytic - numeric) / denom))


# ─── Adam ────────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class AdamState:
    """First/second moment estimates over the flat parameter vector."""

    step: int
    first_moment: np.ndarray
    second_moment: np.ndarray

    @classmethod
    def zeros(cls, m: ParameterSet) -> AdamState:
        size = m.flatten().size
        return cls(step=0, first_moment=np.zeros(size), second_moment=np.zeros(size))

    def matches(self, m: ParameterSet) -> bool:
        return self.first_moment.shape == self.second_moment.shape == (m.flatten().size,)


def adam_step(
    state: AdamState, m: LwptModel, g: Gradients, lr: float
) -> tuple[LwptModel, AdamState]:
    if not state.matches(m):
        raise ShapeError("Optimizer state does not match the model's parameter count")
    grad = g.flatten()
    step = state.step + 1
    first = ADAM_BETA1 * state.first_moment + (1.0 - ADAM_BETA1) * grad
    second = ADAM_BETA2 * state.second_moment + (1.0 - ADAM_BETA2) * grad**2
    first_hat = first / (1.0 - ADAM_BETA1**step)
    second_hat = second / (1.0 - ADAM_BETA2**step)
    params = m.flatten() - lr * first_hat / (np.sqrt(second_hat) + ADAM_EPS)
    if not np.all(np.isfinite(params)):
        raise NumericalError("Adam update produced non-finite parameters")
    return m.unflatten(params), AdamState(step, first, second)


# ─── Epoch loop ──────────────────────────────────────────────────────


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    mean_loss: float
    learning_rate: float


@dataclass
class TrainResult:
    model: LwptModel
    history: list[EpochRecord] = field(default_factory=list)
    state: AdamState | None = None


EpochBatches = Callable[[int], Iterable[PairBatch]]
EpochCallback = Callable[[int, LwptModel, AdamState, list[EpochRecord]], None]


def train(
    m0: LwptModel,
    batches: EpochBatches,
    cfg: TrainConfig,
    *,
    start_epoch: int = 0,
    state: AdamState | None = None,
    history: Sequence[EpochRecord] = (),
    on_epoch: EpochCallback | None = None,
) -> TrainResult:
    """Run epochs start_epoch + 1 .. cfg.epochs.

    *batches(epoch)* yields the PairBatch sequence of one (1-based) epoch and must
    be a deterministic function of the epoch. At most cfg.steps_per_epoch batches
    of at most cfg.batch_size pairs are taken from it; a source that runs dry
    earlier ends the epoch early. Passing the state and history of a
    checkpoint resumes the run exactly where it stopped.
    """
    model = m0
    state = state if state is not None else AdamState.zeros(m0)
    records = list(history)
    for epoch in range(start_epoch + 1, cfg.epochs + 1):
        lr = cfg.learning_rate_at(epoch)
        total, steps = 0.0, 0
        for batch in islice(batches(epoch), cfg.steps_per_epoch):
            if len(batch) > cfg.batch_size:
                raise ShapeError(
                    f"Epoch {epoch}: batch of {len(batch)} pairs exceeds batch_size {cfg.batch_size}"
                )
            try:
                value, grads = backward(model, batch)
                if not math.isfinite(value):
                    raise NumericalError("loss became non-finite")
                model, state = adam_step(state, model, grads, lr)
            except NumericalError as e:
                raise TrainingDivergedError(
                    f"Epoch {epoch}: {e}", model=model, history=records
                ) from e
            total += value
            steps += 1
        if steps == 0:
            raise ParameterError(f"Epoch {epoch} produced no batches")
        if steps < cfg.steps_per_epoch:
            logger.debug("epoch %d ran %d of %d steps", epoch, steps, cfg.steps_per_epoch)
        record = EpochRecord(epoch=epoch, mean_loss=total / steps, learning_rate=lr)
        records.append(record)
        logger.info("epoch %d | loss %.6g | lr %.3g", epoch, record.mean_loss, lr)
        if on_epoch is not None:
            on_epoch(epoch, model, state, records)
    return TrainResult(model=model, history=records, state=state)
