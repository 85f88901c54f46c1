import math

import numpy as np
import pytest

from ssiregret.channels import (AdditiveGaussian, BinarySymmetric, FiniteConditional, c_s,
                                expected_ml_loss_per_step, likelihood, load_finite_channel,
                                ml_estimate, sample)

# Phi(-1) from 40-digit mpmath quadrature of the standard normal density
PHI_MINUS_1 = 0.15865525393145705141


def _asym():
    return FiniteConditional((-1.0, 0.0, 2.5), [[0.6, 0.3, 0.1], [0.1, 0.2, 0.7]])


def test_validation():
    with pytest.raises(ValueError):
        BinarySymmetric(1.5)
    with pytest.raises(ValueError):
        AdditiveGaussian(0.0)
    with pytest.raises(ValueError):
        FiniteConditional((0.0, 1.0), [[0.5, 0.6], [0.5, 0.5]])
    with pytest.raises(ValueError):
        FiniteConditional((0.0, 1.0), [[1.2, -0.2], [0.5, 0.5]])
    FiniteConditional((0.0, 1.0), [[0.5, 0.5 + 5e-13], [0.5, 0.5]])


def test_bsc_extreme_sampling():
    rng = np.random.default_rng(1)
    assert all(sample(BinarySymmetric(0.0), 1, rng) == 1.0 for _ in range(200))
    assert all(sample(BinarySymmetric(1.0), 1, rng) == 0.0 for _ in range(200))


def test_bsc_flip_frequency():
    rng = np.random.default_rng(2)
    draws = BinarySymmetric(0.3).sample_sequence(np.zeros(100_000), rng)
    assert abs(draws.mean() - 0.3) <= 3 * math.sqrt(0.3 * 0.7 / 1e5)


def test_scalar_and_sequence_sampling_agree():
    ch = BinarySymmetric(0.3)
    target = np.array([0, 1, 1, 0, 1] * 20, dtype=float)
    a = ch.sample_sequence(target, np.random.default_rng(5))
    rng = np.random.default_rng(5)
    b = np.array([ch.sample(x, rng) for x in target])
    np.testing.assert_array_equal(a, b)


def test_finite_sampling_frequencies():
    ch = _asym()
    rng = np.random.default_rng(3)
    for x in (0, 1):
        draws = ch.sample_sequence(np.full(100_000, float(x)), rng)
        for j, s in enumerate(ch.side_alphabet):
            p = ch.matrix[x, j]
            assert abs(np.mean(draws == s) - p) <= 4 * math.sqrt(p * (1 - p) / 1e5) + 1e-12


@pytest.mark.parametrize("channel, side, expected", [
    (BinarySymmetric(0.3), 1, 1.0),
    (BinarySymmetric(0.7), 1, 0.0),
    (AdditiveGaussian(1.0), 0.7, 1.0),
    (BinarySymmetric(0.5), 0, 0.5),
    (AdditiveGaussian(1.0), 0.5, 1.0),
    (AdditiveGaussian(1.0), 0.4999, 0.0),
])
def test_ml_estimate_examples(channel, side, expected):
    assert ml_estimate(channel, side) == expected


def test_finite_ml_estimate_and_ties():
    ch = FiniteConditional((0.0, 1.0, 2.0), [[0.5, 0.25, 0.25], [0.25, 0.25, 0.5]])
    assert [ml_estimate(ch, s) for s in (0.0, 1.0, 2.0)] == [0.0, 0.5, 1.0]
    with pytest.raises(ValueError):
        ml_estimate(ch, 3.0)


@pytest.mark.parametrize("channel, expected", [
    (BinarySymmetric(0.1), 0.1),
    (BinarySymmetric(0.8), 0.2),
    (AdditiveGaussian(0.5), PHI_MINUS_1),
])
def test_expected_ml_loss_examples(channel, expected):
    assert expected_ml_loss_per_step(channel) == pytest.approx(expected, abs=1e-12)


def test_c_s_examples():
    assert c_s(BinarySymmetric(0.1), 10) == pytest.approx(1.0, abs=1e-12)
    assert c_s(BinarySymmetric(0.5), 4) == 2.0
    assert c_s(AdditiveGaussian(0.5), 100) == pytest.approx(100 * PHI_MINUS_1, abs=1e-10)
    with pytest.raises(ValueError):
        c_s(BinarySymmetric(0.1), 0)


def test_likelihood_examples():
    assert likelihood(BinarySymmetric(0.3), 1, 1) == pytest.approx(0.7)
    assert likelihood(BinarySymmetric(0.3), 0, 1) == pytest.approx(0.3)
    assert likelihood(AdditiveGaussian(1.0), 0, 0) == pytest.approx(0.398942280401433, abs=1e-14)


@pytest.mark.parametrize("channel", [BinarySymmetric(0.2), BinarySymmetric(0.9), _asym(),
                                     FiniteConditional((0.0, 1.0, 2.0), [[0.5, 0.25, 0.25], [0.25, 0.25, 0.5]])])
def test_ml_maximises_likelihood_finite(channel):
    alphabet = channel.side_alphabet
    for s in alphabet:
        est = ml_estimate(channel, s)
        l0, l1 = likelihood(channel, s, 0), likelihood(channel, s, 1)
        if est == 0.5:
            assert l0 == l1
        else:
            assert likelihood(channel, s, est) >= likelihood(channel, s, 1 - est)


@pytest.mark.parametrize("sigma", [0.1, 0.5, 1.0, 3.0])
def test_ml_maximises_likelihood_gaussian_grid(sigma):
    ch = AdditiveGaussian(sigma)
    for s in np.linspace(-3, 4, 701):
        est = ml_estimate(ch, s)
        assert likelihood(ch, s, est) >= likelihood(ch, s, 1 - est)


@pytest.mark.parametrize("channel", [BinarySymmetric(0.1), BinarySymmetric(0.65), BinarySymmetric(0.5),
                                     AdditiveGaussian(0.5), AdditiveGaussian(2.0)])
def test_expected_ml_loss_matches_monte_carlo(channel):
    rng = np.random.default_rng(11)
    expected = expected_ml_loss_per_step(channel)
    assert 0.0 <= expected <= 0.5
    for x in (0.0, 1.0):
        side = channel.sample_sequence(np.full(100_000, x), rng)
        losses = np.abs(channel.ml_estimates(side) - x)
        se = losses.std(ddof=1) / math.sqrt(losses.size)
        assert abs(losses.mean() - expected) <= 3 * se + 1e-12


def test_finite_expected_loss_is_worst_case():
    ch = _asym()
    rng = np.random.default_rng(12)
    means = []
    for x in (0.0, 1.0):
        side = ch.sample_sequence(np.full(100_000, x), rng)
        means.append(np.abs(ch.ml_estimates(side) - x).mean())
    # exact per-target losses: target 0 -> P(side=2.5|0) = 0.1, target 1 -> 0.3
    assert means[0] == pytest.approx(0.1, abs=0.005)
    assert means[1] == pytest.approx(0.3, abs=0.005)
    assert expected_ml_loss_per_step(ch) == pytest.approx(0.3, abs=1e-15)


@pytest.mark.parametrize("delta", np.linspace(0, 1, 21))
def test_bsc_symmetry(delta):
    a = expected_ml_loss_per_step(BinarySymmetric(delta))
    assert a == pytest.approx(expected_ml_loss_per_step(BinarySymmetric(1 - delta)), abs=1e-15)


def test_ml_distribution_sums_to_one():
    for ch in (BinarySymmetric(0.3), BinarySymmetric(0.5), AdditiveGaussian(0.7), _asym()):
        for x in (0, 1):
            assert sum(ch.ml_distribution(x).values()) == pytest.approx(1.0, abs=1e-12)


def test_load_finite_channel(tmp_path):
    path = tmp_path / "chan.txt"
    path.write_text("-1 0 2.5\n0.6 0.3 0.1\n0.1 0.2 0.7\n")
    assert load_finite_channel(path) == _asym()
    path.write_text("0 1\n0.5 0.5\n")
    with pytest.raises(ValueError):
        load_finite_channel(path)
