import math

import numpy as np
import pytest

from decoding import hard_decision
from simulation import ChannelConfig, modulate, sigma_for, transmit_and_llr


def test_sigma_formula():
    assert math.isclose(sigma_for(0.0, 0.5), 1.0)
    assert math.isclose(ChannelConfig(3.0, 0.5).sigma ** 2, 1 / (2 * 0.5 * 10 ** 0.3))


def test_doubling_ebno_halves_noise_variance():
    doubled = 2.0 + 10 * math.log10(2)
    ratio = sigma_for(2.0, 0.5) ** 2 / sigma_for(doubled, 0.5) ** 2
    assert math.isclose(ratio, 2.0, rel_tol=1e-12)


@pytest.mark.parametrize("ebno_db, rate", [(float('nan'), 0.5), (2.0, 0.0), (2.0, 1.5)])
def test_channel_config_validation(ebno_db, rate):
    with pytest.raises(ValueError):
        ChannelConfig(ebno_db, rate)


def test_modulate():
    assert list(modulate([0, 1])) == [1.0, -1.0]
    assert np.all(modulate(np.zeros(8, dtype=np.uint8)) == 1.0)
    c = np.random.default_rng(3).integers(0, 2, size=32)
    assert np.array_equal(hard_decision(modulate(c)), c)
    with pytest.raises(ValueError):
        modulate([0, 2])


def test_high_snr_llrs_keep_the_transmitted_signs():
    x = modulate(np.random.default_rng(4).integers(0, 2, size=256))
    L = transmit_and_llr(x, ChannelConfig(30.0, 0.5), np.random.default_rng(5))
    assert np.array_equal(np.sign(L), x)


def test_llr_mean_matches_two_over_sigma_squared():
    ch = ChannelConfig(1.0, 0.5)
    samples = 100_000
    L = transmit_and_llr(np.ones(samples), ch, np.random.default_rng(6))
    expected = 2 / ch.sigma ** 2
    standard_error = (2 / ch.sigma) / math.sqrt(samples)
    assert abs(L.mean() - expected) < 3 * standard_error, f"Mean LLR {L.mean()} too far from {expected}"


def test_fixed_seed_replays_identical_noise():
    x = modulate(np.zeros(64, dtype=np.uint8))
    ch = ChannelConfig(2.0, 0.5)
    first = transmit_and_llr(x, ch, np.random.default_rng([1, 17]))
    second = transmit_and_llr(x, ch, np.random.default_rng([1, 17]))
    assert np.array_equal(first, second)
