"""Tests for wpt_forward / wpt_inverse and the WptTree entity."""

import math

import numpy as np
import pytest

from app.domain.entities.wpt_tree import WptTree
from app.domain.errors import LengthError, ParameterError, ShapeError
from app.domain.policies.filter_bank import standard_kernel
from app.domain.policies.packet_transform import analyze, synthesize, wpt_forward, wpt_inverse
from app.domain.value_objects.filter_kernel import FilterKernel
from app.domain.value_objects.signal import Signal


def _rel_err(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


# ─── Forward ─────────────────────────────────────────────────────────


def test_haar_layer_one_is_pairwise_sums_and_differences(haar, random_signal):
    x = random_signal(16)
    tree = wpt_forward(x, haar, 1)
    s = x.samples
    # circular: node n pairs sample 2n with sample 2n - 1
    sums = (s[0::2] + np.roll(s, 1)[0::2]) / math.sqrt(2)
    diffs = (s[0::2] - np.roll(s, 1)[0::2]) / math.sqrt(2)
    assert np.allclose(tree.node(1, 0), sums, atol=1e-14)
    assert np.allclose(tree.node(1, 1), diffs, atol=1e-14)


def test_tree_shapes(db2, random_signal):
    tree = wpt_forward(random_signal(64), db2, 3)
    assert tree.depth == 3
    assert tree.signal_length == 64
    for depth in (1, 2, 3):
        assert tree.layer(depth).shape == (2**depth, 64 // 2**depth)


@pytest.mark.parametrize("wavelet", ["haar", "db2", "db4"])
def test_energy_is_conserved_at_every_layer(wavelet, random_signal):
    x = random_signal(256)
    tree = wpt_forward(x, standard_kernel(wavelet), 4)
    total = x.norm() ** 2
    for energy in tree.energy():
        assert abs(energy - total) / total < 1e-8


@pytest.mark.parametrize("layers", [1, 2, 3, 4])
def test_constant_signal_haar_only_lowpass_path_survives(layers, haar):
    tree = wpt_forward(Signal(np.full(32, 2.5)), haar, layers)
    leaves = tree.leaves
    assert np.allclose(leaves[0], 2.5 * 2 ** (layers / 2))
    assert np.max(np.abs(leaves[1:])) < 1e-12


def test_forward_length_not_divisible_raises(db2, random_signal):
    with pytest.raises(LengthError, match="not divisible"):
        wpt_forward(random_signal(24), db2, 4)


def test_forward_needs_conjugate_mirror_kernel(random_signal):
    with pytest.raises(ParameterError, match="conjugate-mirror"):
        wpt_forward(random_signal(16), FilterKernel([1.0, 0.5]), 1)


def test_analyze_batches_match_single_signals(db2, rng):
    batch = rng.standard_normal((3, 32))
    layers = analyze(batch, db2, 2)
    for i in range(3):
        single = analyze(batch[i], db2, 2)
        assert np.allclose(layers[-1][i], single[-1])


# ─── Inverse ─────────────────────────────────────────────────────────


def test_round_trip_haar_l3(haar, random_signal):
    x = random_signal(64)
    assert _rel_err(wpt_inverse(wpt_forward(x, haar, 3), haar).samples, x.samples) <= 1e-10


def test_round_trip_db4_l5_full_length(db4, random_signal):
    x = random_signal(2**13)
    assert _rel_err(wpt_inverse(wpt_forward(x, db4, 5), db4).samples, x.samples) <= 1e-8


@pytest.mark.parametrize("wavelet", ["db2", "sym4", "coif2"])
@pytest.mark.parametrize("layers", [1, 3, 6])
def test_round_trip_other_families(wavelet, layers, random_signal):
    h = standard_kernel(wavelet)
    x = random_signal(256)
    assert _rel_err(wpt_inverse(wpt_forward(x, h, layers), h).samples, x.samples) <= 1e-8


def test_zero_tree_gives_zero_signal(db2):
    tree = WptTree(tuple(np.zeros((2**d, 32 // 2**d)) for d in (1, 2)))
    assert np.array_equal(wpt_inverse(tree, db2).samples, np.zeros(32))


def test_inverse_keeps_sample_rate(db2, random_signal):
    x = random_signal(32, 8000.0)
    assert wpt_inverse(wpt_forward(x, db2, 2), db2, x.sample_rate_hz).sample_rate_hz == 8000.0


def test_synthesize_rejects_non_power_of_two_leaf_count(db2):
    with pytest.raises(LengthError):
        synthesize(np.zeros((3, 8)), db2)


def test_tree_rejects_inconsistent_layer_shapes():
    with pytest.raises(ShapeError):
        WptTree((np.zeros((2, 8)), np.zeros((4, 3))))
