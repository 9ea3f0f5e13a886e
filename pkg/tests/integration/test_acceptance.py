"""End-to-end properties: reconstruction, init equivalence, HT gain map, audio, CLI, training."""

import numpy as np
import pytest

from app.adapters.audio.wav_io import ingest_wav, write_wav
from app.adapters.pair_sources.sources import FixedPairSource
from app.domain.policies.benchmark import iter_pairs
from app.domain.policies.filter_bank import standard_kernel
from app.domain.policies.lwpt import delta_modify, denoise, encode, init_wpt, param_count
from app.domain.policies.mixing import mix, resample_to
from app.domain.policies.packet_transform import wpt_forward, wpt_inverse
from app.domain.policies.scoring import gain_map, mean_squared_error
from app.domain.policies.shrinkage import denoise_ht
from app.domain.policies.training import train
from app.domain.value_objects.enums import FunctionClass
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import ClassSpec, HtConfig, MixSpec, NoiseSpec, TrainConfig
from app.main import EXIT_OK, main

# ─── Transform ───────────────────────────────────────────────────────


@pytest.mark.parametrize("wavelet", ["haar", "db2", "db4"])
@pytest.mark.parametrize("layers", range(1, 9))
def test_perfect_reconstruction(wavelet, layers, rng):
    kernel = standard_kernel(wavelet)
    for _ in range(4):
        x = Signal(rng.standard_normal(2**13))
        back = wpt_inverse(wpt_forward(x, kernel, layers), kernel)
        assert np.linalg.norm(back.samples - x.samples) / x.norm() <= 1e-8


def test_init_model_reproduces_the_packet_tree(db4, rng):
    x = Signal(rng.standard_normal(1024))
    m = init_wpt(5, len(db4), db4)
    assert param_count(m) == 1054
    acts = encode(x, m)
    tree = wpt_forward(x, db4, 5)
    for depth in range(1, 6):
        expected = tree.layer(depth)
        got = acts.post[depth - 1][0]
        assert np.linalg.norm(got - expected) <= 1e-8 * np.linalg.norm(expected)
    out = denoise(x, m)
    assert np.linalg.norm(out.samples - x.samples) / x.norm() <= 1e-8


# ─── Hard-threshold gain map ─────────────────────────────────────────


def test_ht_gain_map_steps_in_amplitude_and_is_flat_in_frequency():
    cfg = HtConfig(threshold=1.0, layers=5, wavelet="db4")
    rate, length = 8192.0, 2**13
    nyquist = rate / 2
    frequencies = np.linspace(0.05 * nyquist, 0.95 * nyquist, 16)
    gm = gain_map(
        lambda x: denoise_ht(x, cfg), [0.05, 0.1, 1.4, 1.5], frequencies, length, rate
    )
    assert np.mean(gm.gains[:2]) <= 0.1
    assert np.mean(gm.gains[2:]) >= 0.9
    loud = gm.gains[3]
    assert np.max(loud) - np.min(loud) < 0.15


# ─── Audio ───────────────────────────────────────────────────────────


def test_audio_round_trip_with_init_model_is_identity(tmp_path, rng, db4):
    t = np.arange(16000) / 16000.0
    fg_path, bg_path = tmp_path / "fg.wav", tmp_path / "bg.wav"
    write_wav(fg_path, Signal(0.8 * np.sin(2 * np.pi * 440.0 * t), 16000.0), "float32")
    write_wav(bg_path, Signal(0.3 * rng.standard_normal(32000), 16000.0), "float32")

    fg = resample_to(ingest_wav(fg_path), 8000.0)
    bg = resample_to(ingest_wav(bg_path), 8000.0)
    noisy, _ = mix(fg, bg, MixSpec(target_length=1024, target_rate=8000.0, snr_db=0.0), seed=5)

    out = denoise(noisy, init_wpt(5, len(db4), db4))
    assert out.sample_rate_hz == 8000.0
    assert np.linalg.norm(out.samples - noisy.samples) <= 1e-8 * noisy.norm()


# ─── CLI determinism ─────────────────────────────────────────────────


def _pipeline(root):
    data, model, scores = root / "data", root / "model.json", root / "scores.csv"
    common = ["--seed", "9"]
    assert main(["generate", "--class", "bumps", "--count", "6", "--sigma", "0.3",
                 "--length", "64", *common, "-o", str(data)]) == EXIT_OK
    assert main(["train", "--data", str(data), "--layers", "2", "--wavelet", "db2",
                 "--epochs", "3", "--batch", "2", "--lr-drop-epochs", "2", *common,
                 "-o", str(model)]) == EXIT_OK
    assert main(["evaluate", "--model", str(model), "--test", str(data),
                 "--trained-class", "bumps", "--per-class", "-o", str(scores)]) == EXIT_OK
    return {
        p.relative_to(root).as_posix(): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file() and p.name != "provenance.json"
    }


def test_generate_train_evaluate_is_byte_identical(tmp_path):
    first = _pipeline(tmp_path / "a")
    second = _pipeline(tmp_path / "b")
    assert first == second
    assert {"model.json", "model.history.csv", "scores.csv", "data/manifest.csv"} <= set(first)


# ─── Desk-scale training ─────────────────────────────────────────────


@pytest.fixture(scope="module")
def desk_run():
    kernel = standard_kernel("db4")
    block = ClassSpec(FunctionClass.BLOCK, length=512, seed=21)
    train_pairs = list(iter_pairs(block, NoiseSpec(sigma=0.2, seed=21), 200))
    held_out = ClassSpec(FunctionClass.BLOCK, length=512, seed=22)
    test_pairs = list(iter_pairs(held_out, NoiseSpec(sigma=0.2, seed=22), 100))
    loud_pairs = list(iter_pairs(held_out, NoiseSpec(sigma=1.0, seed=23), 100))

    m0 = init_wpt(3, len(kernel), kernel)
    cfg = TrainConfig(epochs=50, lr_drop_epochs=(), seed=21)
    source = FixedPairSource(train_pairs, cfg.batch_size, cfg.seed)
    result = train(m0, source.epoch_batches, cfg)
    return m0, result.model, test_pairs, loud_pairs


def _mse(model, pairs):
    return mean_squared_error(lambda x: denoise(x, model), pairs)


@pytest.mark.slow
def test_training_beats_init_and_noisy_input(desk_run):
    m0, trained, test_pairs, _ = desk_run
    noisy_mse = mean_squared_error(lambda x: x, test_pairs)
    assert _mse(trained, test_pairs) < _mse(m0, test_pairs)
    assert _mse(trained, test_pairs) < noisy_mse


@pytest.mark.slow
def test_larger_delta_helps_under_heavier_noise(desk_run):
    _, trained, _, loud_pairs = desk_run
    assert _mse(delta_modify(trained, 5.0), loud_pairs) < _mse(trained, loud_pairs)
