"""Tests for the Denoiser implementations."""

import numpy as np
import pytest

from app.adapters.denoisers.wavelet import (
    REFERENCE_NORM_KEY,
    HardThresholdDenoiser,
    IdentityDenoiser,
    LwptDenoiser,
)
from app.application.ports.denoiser import DeltaAdjustable
from app.domain.errors import LengthError
from app.domain.policies.shrinkage import denoise_ht
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import HtConfig


def test_lwpt_denoiser_properties(perturbed_model):
    d = LwptDenoiser(perturbed_model(3))
    assert isinstance(d, DeltaAdjustable)
    assert d.name == "lwpt"
    assert d.delta == 1.0
    assert d.length_multiple == 8


def test_lwpt_denoiser_rejects_unaligned_length(perturbed_model, random_signal):
    with pytest.raises(LengthError):
        LwptDenoiser(perturbed_model(3))(random_signal(20))


def test_with_delta_is_relative_to_trained_model(perturbed_model):
    base = perturbed_model(2)
    d = LwptDenoiser(base).with_delta(2.0).with_delta(3.0)
    assert d.delta == 3.0
    for g, g0 in zip(d.model.gamma, base.gamma):
        assert np.allclose(g, 3.0 * g0)
    assert np.array_equal(d.model.theta[0], base.theta[0])


def test_delta_one_keeps_the_model(perturbed_model, random_signal):
    base = perturbed_model(2)
    x = random_signal(32)
    assert LwptDenoiser(base, 1.0)(x) == LwptDenoiser(base)(x)
    assert LwptDenoiser(base, 1.0).model is base


def test_estimate_delta_uses_stored_reference(perturbed_model):
    model = perturbed_model(1).with_metadata(**{REFERENCE_NORM_KEY: 0.5})
    noisy = Signal(np.concatenate([np.full(4, 0.5), np.zeros(4)]))
    assert LwptDenoiser(model).estimate_delta(noisy, 4) == pytest.approx(2.0)


def test_hard_threshold_denoiser_matches_policy(random_signal):
    cfg = HtConfig(threshold=0.8, layers=3, wavelet="db2")
    d = HardThresholdDenoiser(cfg)
    x = random_signal(64)
    assert d.name == "ht"
    assert d.config is cfg
    assert d.length_multiple == 8
    assert d(x) == denoise_ht(x, cfg)


def test_identity_denoiser(random_signal):
    x = random_signal(7)
    d = IdentityDenoiser()
    assert d.length_multiple == 1
    assert d(x) is x
