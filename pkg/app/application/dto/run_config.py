"""Run configurations — one validated pydantic record per sub-command.

The CLI merges built-in defaults, the config file and command-line flags into a
flat dict and validates it here; the resolved record is what provenance.json
stores.
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path

from pydantic import (
    BaseModel,
    ConfigDict,
    DirectoryPath,
    Field,
    FilePath,
    field_validator,
    model_validator,
)

from app.domain.value_objects.enums import FunctionClass, Modification, NoiseFamily, SignalFormat
from app.domain.value_objects.specs import DEFAULT_LAYERS, DEFAULT_LENGTH, DEFAULT_WAVELET


class Method(str, Enum):
    LWPT = "lwpt"
    HT = "ht"
    IDENTITY = "identity"


def _power_of_two(value: int, name: str) -> None:
    if value < 1 or value & (value - 1):
        raise ValueError(f"{name} must be a power of two, got {value}")


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    output: Path
    signal_format: SignalFormat = SignalFormat.CSV


class DenoiserOptions(BaseModel):
    """Fields shared by commands that build a denoiser."""

    method: Method = Method.LWPT
    model: FilePath | None = None
    threshold: float | None = Field(default=None, ge=0)
    layers: int = Field(default=DEFAULT_LAYERS, ge=1)
    wavelet: str = DEFAULT_WAVELET
    delta: float | None = None

    @model_validator(mode="after")
    def _method_inputs(self):
        if self.method is Method.LWPT and self.model is None:
            raise ValueError("method=lwpt needs --model")
        if self.delta is not None and self.method is not Method.LWPT:
            raise ValueError(f"--delta applies to method=lwpt only, not {self.method.value}")
        return self


class GenerateRunConfig(RunConfig):
    class_id: FunctionClass
    count: int = Field(ge=1)
    sigma: float = Field(ge=0)
    family: NoiseFamily = NoiseFamily.GAUSSIAN
    length: int = DEFAULT_LENGTH
    modification: Modification = Modification.NONE
    seed: int = Field(ge=0, lt=2**64)

    @model_validator(mode="after")
    def _length(self):
        _power_of_two(self.length, "length")
        return self


class TrainRunConfig(RunConfig):
    # exactly one data source: a dataset directory, streamed benchmark classes, or audio
    data: DirectoryPath | None = None
    stream_classes: list[FunctionClass] = Field(default_factory=list)
    audio_manifest: FilePath | None = None
    train_labels: list[str] = Field(default_factory=list)

    sigma: float = Field(default=0.2, ge=0)
    family: NoiseFamily = NoiseFamily.GAUSSIAN
    length: int = DEFAULT_LENGTH
    snr_db: float | None = 0.0
    target_rate: float = Field(default=8000.0, gt=0)

    layers: int | None = Field(default=DEFAULT_LAYERS, ge=1)
    layer_candidates: list[int] = Field(default_factory=lambda: [3, 4, 5, 6, 7])
    wavelet: str = DEFAULT_WAVELET
    learning_rate: float = Field(default=0.0005, gt=0)
    batch_size: int = Field(default=8, ge=1)
    epochs: int = Field(default=500, ge=0)
    lr_drop_epochs: list[int] = Field(default_factory=lambda: [350, 450])
    # None: one pass over --data per epoch, 16000 for streamed or mixed pairs
    samples_per_epoch: int | None = Field(default=None, ge=1)
    seed: int = Field(ge=0, lt=2**64)
    resume: bool = False
    checkpoint_every: int | None = Field(default=None, ge=1)

    @field_validator("layers", mode="before")
    @classmethod
    def _auto_layers(cls, value):
        if isinstance(value, str) and value.strip().lower() == "auto":
            return None
        return value

    @model_validator(mode="after")
    def _one_source(self):
        sources = [self.data is not None, bool(self.stream_classes), self.audio_manifest is not None]
        if sum(sources) != 1:
            raise ValueError("Give exactly one of --data, --stream-class or --audio-manifest")
        _power_of_two(self.length, "length")
        if self.layers is None and not self.layer_candidates:
            raise ValueError("--layers auto needs at least one --layer-candidates value")
        return self


class DenoiseRunConfig(RunConfig, DenoiserOptions):
    inputs: list[Path] = Field(min_length=1)
    auto_delta: bool = False
    leading: int = Field(default=2000, ge=1)

    @model_validator(mode="after")
    def _inputs_exist(self):
        missing = [str(p) for p in self.inputs if not p.exists()]
        if missing:
            raise ValueError(f"Input paths do not exist: {missing}")
        if self.auto_delta and self.delta is not None:
            raise ValueError("--delta and --auto-delta are mutually exclusive")
        if self.method is Method.HT and self.threshold is None:
            raise ValueError("method=ht needs --lambda")
        return self


class EvaluateRunConfig(RunConfig, DenoiserOptions):
    """Scores one denoiser, or a table of scores across layer counts or noise levels.

    sweep_layers re-scores the test directories once per layer count (method ht or
    identity). sweep_sigmas generates fresh test pairs per noise family and level
    instead of reading test directories.
    """

    test: list[DirectoryPath] = Field(default_factory=list)
    trained_classes: list[str] = Field(min_length=1)
    fit_lambda_on: DirectoryPath | None = None
    per_class: bool = False
    sweep_layers: list[int] = Field(default_factory=list)
    sweep_sigmas: list[float] = Field(default_factory=list)
    sweep_families: list[NoiseFamily] = Field(default_factory=lambda: [NoiseFamily.GAUSSIAN])
    sweep_classes: list[FunctionClass] = Field(default_factory=lambda: list(FunctionClass))
    sweep_count: int = Field(default=100, ge=1)
    length: int = DEFAULT_LENGTH
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _threshold_source(self):
        if self.method is Method.HT and self.threshold is None and self.fit_lambda_on is None:
            raise ValueError("method=ht needs --lambda or --fit-lambda-on")
        if self.sweep_layers and self.sweep_sigmas:
            raise ValueError("--sweep-layers and --sweep-sigma are mutually exclusive")
        if self.sweep_layers:
            if self.method is Method.LWPT:
                raise ValueError("--sweep-layers needs method=ht or method=identity")
            if min(self.sweep_layers) < 1:
                raise ValueError(f"Layer counts must be >= 1, got {self.sweep_layers}")
        if self.sweep_sigmas:
            _power_of_two(self.length, "length")
            if min(self.sweep_sigmas) < 0:
                raise ValueError(f"Noise levels must be >= 0, got {self.sweep_sigmas}")
        elif not self.test:
            raise ValueError("evaluate needs --test unless --sweep-sigma is given")
        return self


class GainMapRunConfig(RunConfig, DenoiserOptions):
    amplitude_count: int = Field(default=31, ge=1)
    amplitude_max: float = Field(default=1.5, gt=0)
    frequency_count: int = Field(default=33, ge=1)
    frequency_max: float = Field(default=4096.0, gt=0)
    length: int = DEFAULT_LENGTH
    sample_rate: float = Field(default=8192.0, gt=0)

    @model_validator(mode="after")
    def _probe_grid(self):
        _power_of_two(self.length, "length")
        if self.frequency_max > self.sample_rate / 2:
            raise ValueError("frequency_max must not exceed the Nyquist frequency")
        if self.method is Method.HT and self.threshold is None:
            raise ValueError("method=ht needs --lambda")
        return self


class MixRunConfig(RunConfig):
    manifest: FilePath
    count: int = Field(ge=1)
    labels: list[str] = Field(default_factory=list)
    target_length: int = DEFAULT_LENGTH
    target_rate: float = Field(default=8000.0, gt=0)
    snr_db: float | None = 0.0
    background_gain: float = Field(default=1.0, ge=0)
    leading: int = Field(default=0, ge=0)
    raw_background: bool = False
    seed: int = Field(ge=0, lt=2**64)

    @model_validator(mode="after")
    def _length(self):
        _power_of_two(self.target_length, "target_length")
        return self


class FoldsRunConfig(RunConfig):
    manifest: FilePath
    n_folds: int = Field(default=8, ge=1)
    seed: int = Field(ge=0, lt=2**64)
