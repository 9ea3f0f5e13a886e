"""WptTree entity — per-layer node coefficients of a packet decomposition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from app.domain.errors import ShapeError


@dataclass(frozen=True, eq=False)
class WptTree:
    """layers[l - 1] has shape (2**l, T / 2**l) for l in 1..L.

    Node i at layer l is the child of node i // 2 at layer l - 1; even children
    come from the low-pass-role kernel, odd children from its alternating flip.
    """

    layers: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        layers = tuple(np.asarray(a, dtype=np.float64) for a in self.layers)
        if not layers:
            raise ShapeError("A packet tree needs at least one layer")
        length = layers[0].shape[-1] * 2
        for depth, nodes in enumerate(layers, start=1):
            expected = (2**depth, length // 2**depth)
            if nodes.shape != expected:
                raise ShapeError(
                    f"Layer {depth} has shape {nodes.shape}, expected {expected}"
                )
        object.__setattr__(self, "layers", layers)

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def signal_length(self) -> int:
        return int(self.layers[0].shape[-1] * 2)

    def layer(self, depth: int) -> np.ndarray:
        """Coefficients of layer *depth* (1-based), shape (2**depth, T / 2**depth)."""
        if not 1 <= depth <= self.depth:
            raise ShapeError(f"Layer {depth} outside 1..{self.depth}")
        return self.layers[depth - 1]

    def node(self, depth: int, index: int) -> np.ndarray:
        return self.layer(depth)[index]

    @property
    def leaves(self) -> np.ndarray:
        return self.layers[-1]

    def energy(self) -> list[float]:
        """Sum of squared coefficients per layer."""
        return [float(np.sum(nodes**2)) for nodes in self.layers]

    def with_leaves(self, leaves: np.ndarray) -> WptTree:
        """Copy whose deepest layer is replaced (intermediate layers kept)."""
        leaves = np.asarray(leaves, dtype=np.float64)
        if leaves.shape != self.leaves.shape:
            raise ShapeError(f"Leaves shape {leaves.shape} != {self.leaves.shape}")
        return WptTree(self.layers[:-1] + (leaves,))
