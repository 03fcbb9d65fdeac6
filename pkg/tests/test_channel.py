import numpy as np
import pytest

from agibtc import modem
from agibtc.channel import ChannelParams, noise_variance, rayleigh_bpsk_ber, transmit


def test_noise_variance():
    assert ChannelParams(0.0).n0 == pytest.approx(1.0)
    assert noise_variance(ChannelParams(10.0, 0.5, 2)) == pytest.approx(0.1)
    assert ChannelParams(200.0).n0 < 1e-19
    with pytest.raises(ValueError):
        ChannelParams(3.0, code_rate=0.0)


def test_noiseless_and_stats(rng):
    x = modem.modulate(modem.constellation("qpsk"), rng.integers(0, 2, 20000))
    obs = transmit(x, 0.0, rng)
    assert np.allclose(obs.y, obs.h * x)
    obs = transmit(x, 0.5, rng)
    assert np.mean(np.abs(obs.h) ** 2) == pytest.approx(1.0, rel=0.05)
    assert np.var(obs.y - obs.h * x) == pytest.approx(0.5, rel=0.05)


def test_seeded():
    x = np.ones(10, complex)
    a = transmit(x, 0.1, np.random.default_rng(7))
    b = transmit(x, 0.1, np.random.default_rng(7))
    assert (a.y == b.y).all() and (a.h == b.h).all()


def test_oracle_values():
    assert rayleigh_bpsk_ber(10.0) == pytest.approx(0.5 * (1 - np.sqrt(10 / 11)))
    assert rayleigh_bpsk_ber(10.0) == pytest.approx(0.0233, abs=1e-4)
    assert np.all(np.diff(rayleigh_bpsk_ber(np.arange(0, 30, 5))) < 0)


def test_uncoded_bpsk_matches_closed_form():
    rng = np.random.default_rng(3)
    c = modem.constellation("bpsk")
    n = 200_000
    for snr in (0.0, 10.0):
        bits = rng.integers(0, 2, n, dtype=np.uint8)
        p = ChannelParams(snr)
        obs = transmit(modem.modulate(c, bits), p, rng)
        llr = modem.demodulate(c, obs.y, obs.h, p.n0).ravel()
        ber = np.mean(modem.hard_bits(llr) != bits)
        ref = rayleigh_bpsk_ber(snr)
        assert abs(ber - ref) < 3 * np.sqrt(ref * (1 - ref) / n)
