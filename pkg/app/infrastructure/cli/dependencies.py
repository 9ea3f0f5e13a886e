"""Wires adapters into use cases and builds denoisers from run configs."""

from __future__ import annotations

import logging

from app.adapters.audio.manifest import WavAudioSource
from app.adapters.denoisers.wavelet import HardThresholdDenoiser, IdentityDenoiser, LwptDenoiser
from app.adapters.model_store.json_store import JsonModelStore
from app.adapters.signal_io.codecs import FileSignalStore
from app.adapters.signal_io.dataset import DirectoryDatasetStore
from app.application.dto.run_config import DenoiserOptions, Method
from app.application.ports.denoiser import Denoiser
from app.application.use_cases.denoise_signals import DenoiseSignalsUseCase
from app.application.use_cases.evaluate import EvaluateUseCase, GainMapUseCase
from app.application.use_cases.generate_dataset import GenerateDatasetUseCase
from app.application.use_cases.mix_audio import MakeFoldsUseCase, MixAudioUseCase
from app.application.use_cases.train_model import TrainModelUseCase
from app.domain.value_objects.enums import SignalFormat
from app.domain.value_objects.specs import HtConfig

logger = logging.getLogger(__name__)

# Stateless adapters
_models = JsonModelStore()
_audio = WavAudioSource()


def get_model_store() -> JsonModelStore:
    return _models


def get_audio_source() -> WavAudioSource:
    return _audio


def get_dataset_store(fmt: SignalFormat = SignalFormat.CSV) -> DirectoryDatasetStore:
    return DirectoryDatasetStore(fmt)


def get_generate_uc(fmt: SignalFormat) -> GenerateDatasetUseCase:
    return GenerateDatasetUseCase(store=get_dataset_store(fmt))


def get_train_uc() -> TrainModelUseCase:
    return TrainModelUseCase(models=_models)


def get_denoise_uc(fmt: SignalFormat) -> DenoiseSignalsUseCase:
    return DenoiseSignalsUseCase(signals=FileSignalStore(fmt), audio=_audio)


def get_evaluate_uc() -> EvaluateUseCase:
    return EvaluateUseCase(datasets=get_dataset_store())


def get_gain_map_uc() -> GainMapUseCase:
    return GainMapUseCase()


def get_mix_uc(fmt: SignalFormat) -> MixAudioUseCase:
    return MixAudioUseCase(audio=_audio, datasets=get_dataset_store(fmt))


def get_folds_uc() -> MakeFoldsUseCase:
    return MakeFoldsUseCase(audio=_audio)


def build_denoiser(options: DenoiserOptions, ht: HtConfig | None = None) -> Denoiser:
    """*ht* overrides the config's threshold settings (a fitted lambda)."""
    if options.method is Method.LWPT:
        model = _models.load(options.model)
        delta = 1.0 if options.delta is None else options.delta
        logger.info("Loaded %s (L=%d, delta=%g)", options.model, model.layers, delta)
        return LwptDenoiser(model, delta)
    if options.method is Method.HT:
        cfg = ht or HtConfig(options.threshold, options.layers, options.wavelet)
        return HardThresholdDenoiser(cfg)
    return IdentityDenoiser()
