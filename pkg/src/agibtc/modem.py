"""
Gray-mapped BPSK/QPSK/16QAM/64QAM with exact or max-log soft demapping.

Bit conventions
---------------
* A modulation symbol's bits are read most-significant first; the first half
  of the bits selects the in-phase level and the second half the quadrature
  level (BPSK uses the in-phase axis only).
* Each axis uses the reflected Gray code along the levels from the most
  positive to the most negative, so bit pattern 0...0 sits at the largest
  positive amplitude.  For BPSK this gives bit 0 -> +1 and bit 1 -> -1.
* LLRs are log P(bit = 0) - log P(bit = 1) and are clamped at +-50.
* Field symbols are serialized as 4 bits each, most-significant first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from .siso import CLAMP, normalize

SCHEMES = {"bpsk": 1, "qpsk": 2, "16qam": 4, "64qam": 6}


@dataclass(frozen=True, eq=False)
class Constellation:
    scheme: str
    bits_per_symbol: int
    points: np.ndarray  # complex, indexed by the integer value of the bit label
    labels: np.ndarray  # (M, bits_per_symbol) bit pattern of each point

    @property
    def order(self) -> int:
        return len(self.points)


def _gray_pam(nbits: int) -> np.ndarray:
    """Amplitude for each ``nbits`` label on an unscaled +-1, +-3, ... grid."""
    m = 1 << nbits
    i = np.arange(m)
    levels = (m - 1) - 2 * i  # most positive first
    amp = np.empty(m)
    amp[i ^ (i >> 1)] = levels
    return amp


@lru_cache(maxsize=None)
def constellation(scheme: str) -> Constellation:
    scheme = scheme.lower()
    if scheme not in SCHEMES:
        raise ValueError(f"unknown modulation {scheme!r}; expected one of {list(SCHEMES)}")
    bps = SCHEMES[scheme]
    if bps == 1:
        points = _gray_pam(1).astype(complex)
    else:
        half = bps // 2
        axis = _gray_pam(half)
        labels = np.arange(1 << bps)
        points = axis[labels >> half] + 1j * axis[labels & ((1 << half) - 1)]
        points = points / np.sqrt(np.mean(np.abs(points) ** 2))
    labels = (np.arange(1 << bps)[:, None] >> np.arange(bps - 1, -1, -1)) & 1
    points.setflags(write=False)
    labels.setflags(write=False)
    return Constellation(scheme, bps, points, labels.astype(np.uint8))


def padded_length(n_bits: int, bits_per_symbol: int) -> int:
    return -(-n_bits // bits_per_symbol) * bits_per_symbol


def modulate(c: Constellation, bits) -> np.ndarray:
    """Map bits to points; the bit count is zero-padded to a whole symbol."""
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    pad = padded_length(len(bits), c.bits_per_symbol) - len(bits)
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, np.uint8)])
    weights = 1 << np.arange(c.bits_per_symbol - 1, -1, -1)
    idx = bits.reshape(-1, c.bits_per_symbol) @ weights
    return c.points[idx]


def demodulate(c: Constellation, y, h, n0: float, maxlog: bool = False) -> np.ndarray:
    """Per-bit LLRs of shape (len(y), bits_per_symbol) with known fading ``h``."""
    if n0 <= 0:
        raise ValueError("n0 must be positive")
    y = np.atleast_1d(np.asarray(y, dtype=complex))
    h = np.broadcast_to(np.asarray(h, dtype=complex), y.shape)
    metric = -np.abs(y[:, None] - h[:, None] * c.points[None, :]) ** 2 / n0
    llr = np.empty((len(y), c.bits_per_symbol))
    for i in range(c.bits_per_symbol):
        zero = c.labels[:, i] == 0
        if maxlog:
            llr[:, i] = metric[:, zero].max(axis=1) - metric[:, ~zero].max(axis=1)
        else:
            llr[:, i] = logsumexp(metric[:, zero], axis=1) - logsumexp(metric[:, ~zero], axis=1)
    return np.clip(llr, -CLAMP, CLAMP)


def hard_bits(llr) -> np.ndarray:
    return (np.asarray(llr) < 0).astype(np.uint8)


_SYMBOL_BITS = ((np.arange(16)[:, None] >> np.arange(3, -1, -1)) & 1).astype(np.float64)


def symbols_to_bits(symbols) -> np.ndarray:
    """GF(16) symbols -> bits, 4 per symbol, most-significant first."""
    symbols = np.asarray(symbols, dtype=np.uint8)
    return _SYMBOL_BITS[symbols].astype(np.uint8).reshape(*symbols.shape[:-1], -1)


def bits_to_symbols(bits) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8)
    return (bits.reshape(*bits.shape[:-1], -1, 4) @ np.array([8, 4, 2, 1])).astype(np.uint8)


def bits_to_symbol_reliability(llrs) -> np.ndarray:
    """Combine groups of 4 bit LLRs into 16-value symbol log-likelihoods.

    ``llrs`` has shape (..., 4) (first entry = most-significant bit); bits
    are treated as independent, so loglik(v) = -sum of llr_i over the set
    bits of v.
    """
    llrs = np.asarray(llrs, dtype=np.float64)
    if llrs.shape[-1] != 4:
        raise ValueError("expected 4 LLRs per field symbol")
    return normalize(-llrs @ _SYMBOL_BITS.T)
