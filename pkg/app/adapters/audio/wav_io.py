"""WAV ingestion and emission on top of scipy.io.wavfile.

Integer PCM is mapped to [-1, 1): uint8 -> (x - 128) / 128, int16 -> x / 2**15,
int32 (also how scipy returns 24-bit) -> x / 2**31. Float data is kept as is.
Multichannel files are averaged to mono.
"""

from __future__ import annotations

import io
import logging
import struct
import warnings
from pathlib import Path

import numpy as np
from scipy.io import wavfile

from app.adapters.files import atomic_write_bytes
from app.domain.errors import IngestionError, ValidationError
from app.domain.value_objects.signal import Signal

logger = logging.getLogger(__name__)

_INT_SCALE = {np.dtype("int16"): 2.0**15, np.dtype("int32"): 2.0**31}


def _check_riff_size(data: bytes, source: str) -> None:
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise IngestionError(f"{source}: not a RIFF/WAVE file")
    declared = struct.unpack_from("<I", data, 4)[0] + 8
    if declared > len(data):
        raise IngestionError(
            f"{source}: truncated file (header declares {declared} bytes, found {len(data)})"
        )


def to_unit_range(samples: np.ndarray) -> np.ndarray:
    if samples.dtype == np.uint8:
        return (samples.astype(np.float64) - 128.0) / 128.0
    if samples.dtype in _INT_SCALE:
        return samples.astype(np.float64) / _INT_SCALE[samples.dtype]
    if np.issubdtype(samples.dtype, np.floating):
        return samples.astype(np.float64)
    raise IngestionError(f"Unsupported sample type {samples.dtype}")


def ingest_wav(path: Path) -> Signal:
    """Mono Signal in [-1, 1] with the file's sample rate."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise IngestionError(f"{path}: {e}") from e
    _check_riff_size(data, str(path))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", wavfile.WavFileWarning)
            rate, samples = wavfile.read(io.BytesIO(data))
    except (ValueError, wavfile.WavFileWarning, struct.error, EOFError) as e:
        raise IngestionError(f"{path}: unreadable WAV ({e})") from e
    mono = to_unit_range(np.asarray(samples))
    if mono.ndim == 2:
        mono = mono.mean(axis=1)
    try:
        return Signal(mono, float(rate))
    except ValidationError as e:
        raise IngestionError(f"{path}: {e}") from e


def write_wav(path: Path, signal: Signal, subtype: str = "pcm16") -> None:
    """16-bit PCM (clipped to [-1, 1)) or 32-bit float."""
    if signal.sample_rate_hz is None:
        raise ValidationError("Writing a WAV needs a signal with a sample rate")
    if subtype == "pcm16":
        data = np.clip(np.round(signal.samples * 2.0**15), -(2**15), 2**15 - 1).astype("<i2")
    elif subtype == "float32":
        data = signal.samples.astype("<f4")
    else:
        raise ValidationError(f"Unsupported WAV subtype {subtype!r}")
    buf = io.BytesIO()
    wavfile.write(buf, int(round(signal.sample_rate_hz)), data)
    atomic_write_bytes(Path(path), buf.getvalue())
