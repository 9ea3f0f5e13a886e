"""Tests for the benchmark generators, noise and pair construction."""

import math

import numpy as np
import pytest

from app.domain.errors import DegenerateSignalError, ParameterError
from app.domain.policies.benchmark import (
    corrupt,
    doppler_envelope,
    draw_noise,
    gen_block,
    gen_bumps,
    gen_doppler,
    gen_heavisine,
    generate,
    iter_pairs,
    make_pair,
    modify,
    normalize01,
    partition,
)
from app.domain.policies.seeding import derive_rng
from app.domain.value_objects.enums import FunctionClass, Modification, NoiseFamily
from app.domain.value_objects.signal import Signal
from app.domain.value_objects.specs import ClassSpec, NoiseSpec

# ─── Generators ──────────────────────────────────────────────────────


def test_partition_covers_the_whole_length(rng):
    edges, widths = partition(256, 10, rng)
    assert edges[0] == 0 and edges[-1] == 256
    assert widths.sum() == 256
    assert len(widths) == 10
    assert np.all(widths > 0)


def test_partition_down_to_unit_blocks(rng):
    _, widths = partition(10, 10, rng)
    assert np.array_equal(widths, np.ones(10))


@pytest.mark.parametrize("length,count", [(8, 10), (4, 0)])
def test_partition_rejects_impossible_splits(length, count, rng):
    with pytest.raises(ParameterError, match="non-empty blocks"):
        partition(length, count, rng)


def test_block_too_short_for_its_blocks():
    with pytest.raises(ParameterError):
        gen_block(ClassSpec(FunctionClass.BLOCK, length=8), derive_rng(0))


@pytest.mark.parametrize("seed", range(5))
def test_block_is_piecewise_constant(seed):
    s = gen_block(ClassSpec(FunctionClass.BLOCK, length=512), derive_rng(seed))
    assert len(s) == 512
    assert len(np.unique(s.samples)) <= 10
    assert np.count_nonzero(np.diff(s.samples)) <= 9


@pytest.mark.parametrize("seed", range(5))
def test_bumps_are_non_negative(seed):
    s = gen_bumps(ClassSpec(FunctionClass.BUMPS, length=512), derive_rng(seed))
    assert len(s) == 512
    assert np.all(s.samples >= 0)


def test_heavisine_length_and_bound(rng):
    s = gen_heavisine(ClassSpec(FunctionClass.HEAVISINE, length=1024), rng)
    assert len(s) == 1024
    assert np.max(np.abs(s.samples)) < 10


@pytest.mark.parametrize("seed", range(16))
def test_doppler_pads_then_reverses_then_crops(seed):
    length = 256
    rng = derive_rng(seed)
    z = 10.0 * (1.0 - rng.random())
    pad = int(rng.integers(0, length // 2 + 1))
    reverse = bool(rng.random() < 0.5)
    u = np.arange(1, length + 1) / length
    chirp = doppler_envelope(u, z) * np.sin(16.0 * np.pi * 1.2 / (20.0 * u + 0.2))

    s = gen_doppler(ClassSpec(FunctionClass.DOPPLER, length=length), derive_rng(seed))
    assert len(s) == length
    if reverse:
        # reversed realisations keep the whole chirp and no padding
        assert np.array_equal(s.samples, chirp[::-1])
    else:
        assert not np.any(s.samples[:pad])
        assert np.array_equal(s.samples[pad:], chirp[: length - pad])


def test_reversed_doppler_has_no_trailing_zero_run():
    length = 64
    reversed_seen = 0
    for seed in range(200):
        rng = derive_rng(seed)
        rng.random()
        pad = int(rng.integers(0, length // 2 + 1))
        if not rng.random() < 0.5 or pad < 3:
            continue
        reversed_seen += 1
        s = gen_doppler(ClassSpec(FunctionClass.DOPPLER, length=length), derive_rng(seed))
        assert np.any(s.samples[-pad:])
    assert reversed_seen > 0


def test_generate_dispatches_on_class():
    spec = ClassSpec(FunctionClass.BUMPS, length=256)
    assert generate(spec, derive_rng(3)) == gen_bumps(spec, derive_rng(3))


def test_generators_are_deterministic_for_a_seed():
    spec = ClassSpec(FunctionClass.HEAVISINE, length=256, seed=9)
    assert generate(spec) == generate(spec)


def test_class_spec_requires_power_of_two_length():
    with pytest.raises(ParameterError, match="power of two"):
        ClassSpec(FunctionClass.BLOCK, length=1000)


def test_class_spec_accepts_plain_strings():
    assert ClassSpec("doppler", length=64).class_id is FunctionClass.DOPPLER


# ─── normalize01 ─────────────────────────────────────────────────────


def test_normalize01_maps_to_unit_interval():
    assert np.allclose(normalize01(Signal([2.0, 4.0, 6.0])).samples, [0.0, 0.5, 1.0])


def test_normalize01_constant_raises():
    with pytest.raises(DegenerateSignalError):
        normalize01(Signal(np.full(8, 3.0)))


# ─── Noise ───────────────────────────────────────────────────────────


def test_corrupt_without_noise_is_three_times_signal(random_signal):
    s = random_signal(64)
    out = corrupt(s, NoiseSpec(sigma=0.0))
    assert np.array_equal(out.samples, 3.0 * s.samples)


@pytest.mark.parametrize("family", list(NoiseFamily))
def test_noise_has_unit_variance(family):
    b = draw_noise(family, 10**6, derive_rng(11))
    assert abs(np.var(b) - 1.0) < 0.01
    assert abs(np.mean(b)) < 0.01


def test_uniform_noise_is_bounded():
    b = draw_noise(NoiseFamily.UNIFORM, 10**5, derive_rng(5))
    assert np.max(np.abs(b)) <= math.sqrt(3.0)


def test_corrupt_scales_noise_by_sigma(random_signal):
    s = random_signal(4096)
    out = corrupt(s, NoiseSpec(sigma=0.5), derive_rng(1))
    assert np.std(out.samples - 3.0 * s.samples) == pytest.approx(0.5, rel=0.05)


def test_noise_spec_rejects_negative_sigma():
    with pytest.raises(ParameterError):
        NoiseSpec(sigma=-0.1)


# ─── Modifications ───────────────────────────────────────────────────


@pytest.mark.parametrize(
    "modification,expected",
    [
        (Modification.NONE, [0.0, 1.0]),
        (Modification.OFFSET_UP, [1.5, 2.5]),
        (Modification.OFFSET_DOWN, [-1.5, -0.5]),
        (Modification.DOUBLE, [0.0, 2.0]),
        (Modification.HALF, [0.0, 0.5]),
    ],
)
def test_modify(modification, expected):
    assert np.allclose(modify(Signal([0.0, 1.0]), modification).samples, expected)


# ─── Pairs ───────────────────────────────────────────────────────────


def test_make_pair_clean_is_three_times_modified_unit_signal():
    _, clean = make_pair(
        ClassSpec(FunctionClass.BLOCK, length=256, seed=1),
        NoiseSpec(sigma=0.2, seed=1),
        modification=Modification.OFFSET_UP,
    )
    assert np.min(clean.samples) == pytest.approx(4.5)
    assert np.max(clean.samples) == pytest.approx(7.5)


def test_make_pair_without_noise_is_clean():
    noisy, clean = make_pair(ClassSpec(FunctionClass.BUMPS, length=128), NoiseSpec(sigma=0.0), 4)
    assert noisy == clean


def test_make_pair_is_deterministic():
    cs, ns = ClassSpec(FunctionClass.DOPPLER, length=256, seed=7), NoiseSpec(sigma=0.3, seed=7)
    assert make_pair(cs, ns, 3) == make_pair(cs, ns, 3)
    assert make_pair(cs, ns, 3)[1] != make_pair(cs, ns, 4)[1]


def test_make_pair_stream_changes_the_draw():
    cs, ns = ClassSpec(FunctionClass.BLOCK, length=256), NoiseSpec(sigma=0.3)
    assert make_pair(cs, ns, 0, stream=(1,))[1] != make_pair(cs, ns, 0, stream=(2,))[1]


def test_make_pair_noise_seed_leaves_clean_unchanged():
    cs = ClassSpec(FunctionClass.HEAVISINE, length=256, seed=2)
    a_noisy, a_clean = make_pair(cs, NoiseSpec(sigma=0.3, seed=1))
    b_noisy, b_clean = make_pair(cs, NoiseSpec(sigma=0.3, seed=2))
    assert a_clean == b_clean
    assert a_noisy != b_noisy


def test_make_pair_negative_index():
    with pytest.raises(ParameterError):
        make_pair(ClassSpec(FunctionClass.BLOCK, length=64), NoiseSpec(), -1)


def test_iter_pairs_matches_make_pair():
    cs, ns = ClassSpec(FunctionClass.BUMPS, length=64), NoiseSpec(sigma=0.1)
    pairs = list(iter_pairs(cs, ns, 3, start=2))
    assert len(pairs) == 3
    assert pairs[1] == make_pair(cs, ns, 3)


def test_iter_pairs_negative_count():
    with pytest.raises(ParameterError):
        list(iter_pairs(ClassSpec(FunctionClass.BLOCK, length=64), NoiseSpec(), -1))


def test_derive_rng_rejects_negative_keys():
    with pytest.raises(ParameterError):
        derive_rng(1, -2)
