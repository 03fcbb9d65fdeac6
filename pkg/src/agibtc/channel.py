"""
Rayleigh fast-fading channel with AWGN and Eb/N0 bookkeeping.

Every modulation symbol gets its own fading coefficient h ~ CN(0, 1) and the
receiver knows h exactly.  Randomness comes from a ``numpy.random.Generator``
(PCG64 bit generator, ziggurat normals); draws are made in a fixed order:
real parts of h, imaginary parts of h, then the noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


@dataclass(frozen=True)
class ChannelParams:
    ebn0_db: float
    code_rate: float = 1.0
    bits_per_symbol: int = 1

    def __post_init__(self):
        if not self.code_rate > 0:
            raise ValueError("code rate must be positive")
        if self.bits_per_symbol < 1:
            raise ValueError("bits_per_symbol must be >= 1")

    @property
    def n0(self) -> float:
        return noise_variance(self)


class FadedObservation(NamedTuple):
    y: np.ndarray
    h: np.ndarray


def noise_variance(params: ChannelParams) -> float:
    """Complex noise variance N0 for unit-energy symbols.

    Eb counts information bits only, so Es = R * bps * Eb = 1.
    """
    if not params.code_rate > 0:
        raise ValueError("code rate must be positive")
    ebn0 = 10.0 ** (params.ebn0_db / 10.0)
    return 1.0 / (params.code_rate * params.bits_per_symbol * ebn0)


def transmit(x, params: ChannelParams | float, rng: np.random.Generator) -> FadedObservation:
    """Send ``x`` through the channel; ``params`` may also be a bare N0."""
    x = np.asarray(x, dtype=complex)
    n0 = params.n0 if isinstance(params, ChannelParams) else float(params)
    h = rng.standard_normal((2,) + x.shape)
    h = (h[0] + 1j * h[1]) * np.sqrt(0.5)
    noise = rng.standard_normal((2,) + x.shape)
    noise = (noise[0] + 1j * noise[1]) * np.sqrt(n0 / 2.0)
    return FadedObservation(h * x + noise, h)


def rayleigh_bpsk_ber(snr_db) -> np.ndarray | float:
    """Closed-form BPSK bit error rate on Rayleigh fading at average SNR."""
    g = 10.0 ** (np.asarray(snr_db, dtype=float) / 10.0)
    out = 0.5 * (1.0 - np.sqrt(g / (1.0 + g)))
    return float(out) if out.ndim == 0 else out
