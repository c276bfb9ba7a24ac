import numpy as np
import pytest

from kwayrelay import channel


def test_network_determinism():
    a = channel.sample_network(7, 4, 3)
    b = channel.sample_network(7, 4, 3)
    for ha, hb in zip(a.uplink + a.downlink, b.uplink + b.downlink):
        assert np.array_equal(ha, hb)


def test_seed_sensitivity():
    a = channel.sample_network(7, 4, 3)
    b = channel.sample_network(8, 4, 3)
    assert not np.allclose(a.uplink[0], b.uplink[0])


def test_uplink_downlink_independent():
    net = channel.sample_network(7, 4, 3)
    assert not np.allclose(net.uplink[0], net.downlink[0])


def test_entry_moments():
    rng = channel.make_rng(1)
    z = channel.complex_gaussian(rng, 100_000)
    assert abs(z.mean()) < 0.02
    assert 0.97 < np.mean(np.abs(z) ** 2) < 1.03
    # real/imag parts each carry half the variance
    assert 0.45 < np.var(z.real) < 0.55


def test_noise_variance_zero():
    assert np.array_equal(channel.sample_noise(3, 5, 0.0),
                          np.zeros(5, dtype=complex))


def test_noise_moments_and_determinism():
    z = channel.sample_noise(3, 100_000, 2.0)
    assert 1.94 < np.mean(np.abs(z) ** 2) < 2.06
    assert np.array_equal(z, channel.sample_noise(3, 100_000, 2.0))


def test_negative_variance_rejected():
    with pytest.raises(ValueError):
        channel.sample_noise(3, 5, -1.0)


def test_purpose_streams_disjoint():
    a = channel.make_rng(1, 0, channel.TAG_CHANNEL).random(8)
    b = channel.make_rng(1, 0, channel.TAG_NOISE_MAC).random(8)
    c = channel.make_rng(1, 1, channel.TAG_CHANNEL).random(8)
    assert not np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_simconfig_validation():
    with pytest.raises(ValueError):
        channel.SimConfig(K=1, snr=1.0, master_seed=0, trials=1)
    with pytest.raises(ValueError):
        channel.SimConfig(K=4, snr=0.0, master_seed=0, trials=1)
    cfg = channel.SimConfig(K=4, snr=1.0, master_seed=0, trials=1)
    assert cfg.M == 3
