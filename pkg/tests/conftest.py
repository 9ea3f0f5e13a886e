"""Pytest configuration and shared fixtures."""

import numpy as np
import pytest

from app.domain.entities.lwpt_model import LwptModel
from app.domain.policies.filter_bank import standard_kernel
from app.domain.policies.lwpt import init_wpt
from app.domain.value_objects.signal import Signal


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def haar():
    return standard_kernel("haar")


@pytest.fixture
def db2():
    return standard_kernel("db2")


@pytest.fixture
def db4():
    return standard_kernel("db4")


@pytest.fixture
def random_signal(rng):
    def _make(length: int, rate: float | None = None) -> Signal:
        return Signal(rng.standard_normal(length), rate)

    return _make


@pytest.fixture
def perturbed_model(rng):
    """init_wpt model with jittered kernels and small positive biases."""

    def _make(layers: int = 2, wavelet: str = "db2", scale: float = 0.05) -> LwptModel:
        kernel = standard_kernel(wavelet)
        base = init_wpt(layers, len(kernel), kernel)
        flat = base.flatten() + scale * rng.standard_normal(base.flatten().size)
        n_gamma = sum(2**d for d in range(1, layers + 1))
        flat[-n_gamma:] = rng.uniform(0.05, 0.3, n_gamma)
        return base.unflatten(flat)

    return _make
