"""L-WPT model entities — learnable kernels, biases, and the forward-pass record."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, TypeVar

import numpy as np

from app.domain.errors import ShapeError, ValidationError

P = TypeVar("P", bound="ParameterSet")


@dataclass(frozen=True, eq=False)
class ParameterSet:
    """theta/beta/gamma laid out per layer.

    theta[l - 1] and beta[l - 1] have shape (2**l, K + 1); gamma[l - 1] has
    shape (2**l,). Flattening order is theta layers, beta layers, gamma layers.
    """

    theta: tuple[np.ndarray, ...]
    beta: tuple[np.ndarray, ...]
    gamma: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        theta = tuple(np.array(a, dtype=np.float64) for a in self.theta)
        beta = tuple(np.array(a, dtype=np.float64) for a in self.beta)
        gamma = tuple(np.array(a, dtype=np.float64) for a in self.gamma)
        if not theta:
            raise ShapeError("At least one layer is required")
        if not len(theta) == len(beta) == len(gamma):
            raise ShapeError("theta, beta and gamma must have the same layer count")
        kernel_len = theta[0].shape[-1]
        for depth, (t, b, g) in enumerate(zip(theta, beta, gamma), start=1):
            nodes = 2**depth
            if t.shape != (nodes, kernel_len) or b.shape != (nodes, kernel_len):
                raise ShapeError(
                    f"Layer {depth}: kernels must have shape {(nodes, kernel_len)}, "
                    f"got theta {t.shape} and beta {b.shape}"
                )
            if g.shape != (nodes,):
                raise ShapeError(f"Layer {depth}: biases must have shape ({nodes},)")
        for arr in theta + beta + gamma:
            arr.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)

    @property
    def layers(self) -> int:
        return len(self.theta)

    @property
    def kernel_len(self) -> int:
        return int(self.theta[0].shape[-1])

    def flatten(self) -> np.ndarray:
        return np.concatenate([a.reshape(-1) for a in self.theta + self.beta + self.gamma])

    def unflatten(self: P, flat: np.ndarray, **extra: Any) -> P:
        """Build a same-shaped instance from a flat vector."""
        flat = np.asarray(flat, dtype=np.float64)
        arrays = self.theta + self.beta + self.gamma
        total = sum(a.size for a in arrays)
        if flat.shape != (total,):
            raise ShapeError(f"Flat vector has shape {flat.shape}, expected ({total},)")
        chunks, offset = [], 0
        for a in arrays:
            chunks.append(flat[offset : offset + a.size].reshape(a.shape))
            offset += a.size
        n = self.layers
        return type(self)(
            theta=tuple(chunks[:n]),
            beta=tuple(chunks[n : 2 * n]),
            gamma=tuple(chunks[2 * n :]),
            **extra,
        )

    def all_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.flatten())))


@dataclass(frozen=True, eq=False)
class LwptModel(ParameterSet):
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.all_finite():
            raise ValidationError("Model taps and biases must all be finite")
        object.__setattr__(self, "metadata", dict(self.metadata))

    def unflatten(self, flat: np.ndarray, **extra: Any) -> LwptModel:
        extra.setdefault("metadata", self.metadata)
        return super().unflatten(flat, **extra)

    def with_metadata(self, **updates: Any) -> LwptModel:
        return LwptModel(self.theta, self.beta, self.gamma, {**self.metadata, **updates})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LwptModel):
            return NotImplemented
        return (
            self.layers == other.layers
            and self.kernel_len == other.kernel_len
            and np.array_equal(self.flatten(), other.flatten())
        )


@dataclass(frozen=True, eq=False)
class Gradients(ParameterSet):
    """Partials of the loss, laid out exactly like the model."""

    @classmethod
    def zeros_like(cls, params: ParameterSet) -> Gradients:
        return cls(
            theta=tuple(np.zeros_like(a) for a in params.theta),
            beta=tuple(np.zeros_like(a) for a in params.beta),
            gamma=tuple(np.zeros_like(a) for a in params.gamma),
        )


@dataclass(frozen=True, eq=False)
class LwptActivations:
    """Forward-pass record for a batch of B signals.

    pre[l - 1], post[l - 1]: encoder values at layer l, shape (B, 2**l, T / 2**l).
    recon[l]: decoder estimates for l = 0..L, shape (B, 2**l, T / 2**l), with
    recon[L] equal to post[L - 1] and recon[0][:, 0] the denoised output.
    """

    inputs: np.ndarray
    pre: tuple[np.ndarray, ...]
    post: tuple[np.ndarray, ...]
    recon: tuple[np.ndarray, ...] = ()

    @property
    def layers(self) -> int:
        return len(self.post)

    @property
    def leaves(self) -> np.ndarray:
        return self.post[-1]

    @property
    def output(self) -> np.ndarray:
        if not self.recon:
            raise ShapeError("Activations have not been decoded yet")
        return self.recon[0][:, 0, :]

    def scaled(self, factor: float) -> LwptActivations:
        """Same record with every encoder output multiplied by *factor*."""
        return LwptActivations(
            inputs=self.inputs,
            pre=tuple(p * factor for p in self.pre),
            post=tuple(p * factor for p in self.post),
        )
