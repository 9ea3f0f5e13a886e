"""Tests for WAV ingestion/emission and the audio manifest."""

import numpy as np
import pytest
from scipy.io import wavfile

from app.adapters.audio.manifest import WavAudioSource, load_audio_manifest
from app.adapters.audio.wav_io import ingest_wav, to_unit_range, write_wav
from app.domain.errors import FormatError, IngestionError, ValidationError
from app.domain.value_objects.enums import MixRole
from app.domain.value_objects.signal import Signal

# ─── Ingestion ───────────────────────────────────────────────────────


def test_int16_is_scaled_to_unit_range(tmp_path):
    path = tmp_path / "a.wav"
    wavfile.write(path, 8000, np.array([16384, -32768, 0], dtype=np.int16))
    s = ingest_wav(path)
    assert np.array_equal(s.samples, [0.5, -1.0, 0.0])
    assert s.sample_rate_hz == 8000.0


def test_stereo_is_averaged(tmp_path):
    path = tmp_path / "stereo.wav"
    wavfile.write(path, 16000, np.array([[16384, 0], [-16384, -16384]], dtype=np.int16))
    assert np.array_equal(ingest_wav(path).samples, [0.25, -0.5])


def test_uint8_and_float_samples():
    assert np.array_equal(to_unit_range(np.array([192, 128, 0], dtype=np.uint8)), [0.5, 0.0, -1.0])
    assert np.array_equal(to_unit_range(np.array([0.25], dtype=np.float32)), [0.25])
    assert to_unit_range(np.array([2**30], dtype=np.int32))[0] == 0.5


def test_float_wav(tmp_path):
    path = tmp_path / "f.wav"
    wavfile.write(path, 44100, np.array([0.125, -0.75], dtype=np.float32))
    assert np.array_equal(ingest_wav(path).samples, [0.125, -0.75])


def test_truncated_file(tmp_path):
    path = tmp_path / "cut.wav"
    wavfile.write(path, 8000, np.zeros(1000, dtype=np.int16))
    path.write_bytes(path.read_bytes()[:-200])
    with pytest.raises(IngestionError, match="truncated"):
        ingest_wav(path)


def test_not_a_wav(tmp_path):
    path = tmp_path / "text.wav"
    path.write_text("hello, this is not audio")
    with pytest.raises(IngestionError, match="RIFF"):
        ingest_wav(path)


def test_missing_file(tmp_path):
    with pytest.raises(IngestionError):
        ingest_wav(tmp_path / "nope.wav")


# ─── Emission ────────────────────────────────────────────────────────


def test_pcm16_round_trip_within_one_step(tmp_path, rng):
    s = Signal(rng.uniform(-0.9, 0.9, 500), 8000.0)
    path = tmp_path / "out.wav"
    write_wav(path, s)
    back = ingest_wav(path)
    assert back.sample_rate_hz == 8000.0
    assert np.max(np.abs(back.samples - s.samples)) <= 2.0**-15


def test_pcm16_clips(tmp_path):
    path = tmp_path / "loud.wav"
    write_wav(path, Signal([2.0, -2.0], 8000.0))
    _, data = wavfile.read(path)
    assert data.tolist() == [32767, -32768]


def test_float32_round_trip(tmp_path, rng):
    s = Signal(rng.uniform(-1, 1, 100), 22050.0)
    path = tmp_path / "out.wav"
    write_wav(path, s, subtype="float32")
    assert np.allclose(ingest_wav(path).samples, s.samples, atol=1e-7)


def test_write_needs_sample_rate(tmp_path):
    with pytest.raises(ValidationError):
        write_wav(tmp_path / "x.wav", Signal([0.0]))


def test_write_unknown_subtype(tmp_path):
    with pytest.raises(ValidationError):
        write_wav(tmp_path / "x.wav", Signal([0.0], 8000.0), subtype="alaw")


def test_wav_audio_source(tmp_path):
    source = WavAudioSource()
    path = tmp_path / "x.wav"
    source.write(path, Signal([0.5, -0.5], 8000.0))
    assert np.array_equal(source.read(path).samples, [0.5, -0.5])


# ─── Manifest ────────────────────────────────────────────────────────


def test_manifest_resolves_relative_paths(tmp_path):
    manifest = tmp_path / "audio.csv"
    manifest.write_text(
        "path,role,label\n"
        "fg/dog.wav,Foreground,dog\n"
        "/data/rain.wav,background,rain\n",
        encoding="utf-8",
    )
    entries = load_audio_manifest(manifest)
    assert entries[0].path == tmp_path / "fg" / "dog.wav"
    assert entries[0].role is MixRole.FOREGROUND
    assert entries[1].path.as_posix() == "/data/rain.wav"
    assert entries[1].label == "rain"


def test_manifest_unknown_role(tmp_path):
    manifest = tmp_path / "audio.csv"
    manifest.write_text("path,role,label\na.wav,foreground,a\nb.wav,noise,b\n", encoding="utf-8")
    with pytest.raises(FormatError, match=":3: unknown role"):
        load_audio_manifest(manifest)


def test_manifest_missing_column(tmp_path):
    manifest = tmp_path / "audio.csv"
    manifest.write_text("path,label\na.wav,a\n", encoding="utf-8")
    with pytest.raises(FormatError, match="role"):
        load_audio_manifest(manifest)


def test_manifest_row_without_path(tmp_path):
    manifest = tmp_path / "audio.csv"
    manifest.write_text("path,role,label\n,foreground,a\n", encoding="utf-8")
    with pytest.raises(FormatError, match="required"):
        load_audio_manifest(manifest)
