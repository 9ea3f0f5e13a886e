"""Signal file codecs.

csv  one sample per line, '.' decimal, repr() precision so values round-trip exactly
bin  b"LWPTSIG1" + uint64 LE sample count + float64 LE samples
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from app.adapters.files import atomic_write_bytes, atomic_write_text
from app.application.ports.dataset_store import SignalStore
from app.domain.errors import FormatError, ValidationError
from app.domain.value_objects.enums import SignalFormat
from app.domain.value_objects.signal import Signal

BINARY_MAGIC = b"LWPTSIG1"
_HEADER = struct.Struct("<8sQ")


def encode_binary(signal: Signal) -> bytes:
    return _HEADER.pack(BINARY_MAGIC, len(signal)) + signal.samples.astype("<f8").tobytes()


def decode_binary(data: bytes, source: str = "<bytes>") -> Signal:
    if len(data) < _HEADER.size:
        raise FormatError(f"{source}: truncated header ({len(data)} bytes)")
    magic, count = _HEADER.unpack_from(data)
    if magic != BINARY_MAGIC:
        raise FormatError(f"{source}: bad magic {magic!r}, expected {BINARY_MAGIC!r}")
    payload = data[_HEADER.size :]
    if len(payload) != 8 * count:
        raise FormatError(
            f"{source}: header declares {count} samples but payload holds {len(payload)} bytes"
        )
    try:
        return Signal(np.frombuffer(payload, dtype="<f8"))
    except ValidationError as e:
        raise FormatError(f"{source}: {e}") from e


def encode_csv(signal: Signal) -> str:
    return "".join(f"{float(v)!r}\n" for v in signal.samples)


def decode_csv(text: str, source: str = "<text>") -> Signal:
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError as e:
            raise FormatError(f"{source}:{lineno}: not a number: {line!r}") from e
    try:
        return Signal(np.array(values))
    except ValidationError as e:
        raise FormatError(f"{source}: {e}") from e


def format_for(path: Path) -> SignalFormat:
    return SignalFormat.BINARY if path.suffix == ".bin" else SignalFormat.CSV


class FileSignalStore(SignalStore):
    """Reads either format (sniffing the magic); writes *fmt*, adding its suffix."""

    def __init__(self, fmt: SignalFormat = SignalFormat.CSV):
        self._fmt = SignalFormat(fmt)

    @property
    def suffix(self) -> str:
        return f".{self._fmt.value}"

    def read_signal(self, path: Path) -> Signal:
        data = Path(path).read_bytes()
        if data.startswith(BINARY_MAGIC) or format_for(Path(path)) is SignalFormat.BINARY:
            return decode_binary(data, str(path))
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise FormatError(f"{path}: not a text signal file") from e
        return decode_csv(text, str(path))

    def write_signal(self, path: Path, signal: Signal) -> Path:
        path = Path(path)
        if path.suffix not in (".csv", ".bin"):
            path = path.with_name(path.name + self.suffix)
        if format_for(path) is SignalFormat.BINARY:
            atomic_write_bytes(path, encode_binary(signal))
        else:
            atomic_write_text(path, encode_csv(signal))
        return path
