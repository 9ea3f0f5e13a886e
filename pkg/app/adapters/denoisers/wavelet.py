"""Concrete denoisers behind the Denoiser port: LWPT, hard threshold, identity."""

from __future__ import annotations

import logging

from app.application.ports.denoiser import DeltaAdjustable, Denoiser
from app.domain.entities.lwpt_model import LwptModel
from app.domain.errors import ParameterError
from app.domain.policies.lwpt import delta_modify, denoise
from app.domain.policies.mixing import estimate_delta
from app.domain.policies.shrinkage import denoise_ht
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import HtConfig

logger = logging.getLogger(__name__)

REFERENCE_NORM_KEY = "background_reference_norm"


class LwptDenoiser(DeltaAdjustable):
    name = "lwpt"

    def __init__(self, model: LwptModel, delta: float = 1.0):
        self._base = model
        self._delta = float(delta)
        self._model = delta_modify(model, self._delta)

    @property
    def model(self) -> LwptModel:
        return self._model

    @property
    def delta(self) -> float:
        return self._delta

    @property
    def length_multiple(self) -> int:
        return 2**self._model.layers

    def denoise(self, signal: Signal) -> Signal:
        signal.require_divisible(self._model.layers)
        return denoise(signal, self._model)

    def with_delta(self, delta: float) -> LwptDenoiser:
        # delta is relative to the trained model, not compounded
        return LwptDenoiser(self._base, delta)

    def estimate_delta(self, noisy: Signal, leading: int) -> float:
        reference = self._base.metadata.get(REFERENCE_NORM_KEY)
        if reference is None:
            raise ParameterError(
                f"Model metadata has no {REFERENCE_NORM_KEY}; train on audio or pass --delta"
            )
        return estimate_delta(noisy, leading, float(reference))


class HardThresholdDenoiser(Denoiser):
    name = "ht"

    def __init__(self, cfg: HtConfig):
        self._cfg = cfg

    @property
    def config(self) -> HtConfig:
        return self._cfg

    @property
    def length_multiple(self) -> int:
        return 2**self._cfg.layers

    def denoise(self, signal: Signal) -> Signal:
        return denoise_ht(signal, self._cfg)


class IdentityDenoiser(Denoiser):
    """Returns the noisy input; the no-op reference for scores."""

    name = "identity"

    def denoise(self, signal: Signal) -> Signal:
        return signal
