import math
from dataclasses import dataclass

import numpy as np


def sigma_for(ebno_db: float, rate: float) -> float:
    """
    Noise standard deviation of the BPSK/AWGN channel at a given Eb/N0.

    Args:
        ebno_db (float): Eb/N0 in dB.
        rate (float): Code rate k/n.

    Returns:
        float: sigma with sigma^2 = 1 / (2 R 10^{ebno_db / 10}).
    """
    if not math.isfinite(ebno_db):
        raise ValueError(f"Eb/N0 must be finite, got {ebno_db}")
    if not 0 < rate <= 1:
        raise ValueError(f"Code rate must lie in (0, 1], got {rate}")
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebno_db / 10.0)))


@dataclass(frozen=True)
class ChannelConfig:
    """
    One operating point of the AWGN channel.

    Attributes:
        ebno_db (float): Eb/N0 in dB.
        rate (float): Code rate R = k/n.
    """
    ebno_db: float
    rate: float

    def __post_init__(self):
        sigma_for(self.ebno_db, self.rate)

    @property
    def sigma(self) -> float:
        return sigma_for(self.ebno_db, self.rate)


def modulate(c) -> np.ndarray:
    """BPSK mapping x = 1 - 2c: bit 0 to +1, bit 1 to -1."""
    c = np.asarray(c)
    if np.any((c != 0) & (c != 1)):
        raise ValueError("BPSK modulation expects binary input")
    return 1.0 - 2.0 * c.astype(np.float64)


def transmit_and_llr(x, ch: ChannelConfig, rng: np.random.Generator) -> np.ndarray:
    """
    Add white Gaussian noise and return channel LLRs L = 2y / sigma^2.

    Args:
        x (array-like): BPSK symbols.
        ch (ChannelConfig): Operating point.
        rng (np.random.Generator): Noise source; equal generator states give equal noise.

    Returns:
        np.ndarray: LLR vector of the same shape as x.
    """
    x = np.asarray(x, dtype=np.float64)
    sigma = ch.sigma
    y = x + rng.normal(loc=0.0, scale=sigma, size=x.shape)
    return 2.0 * y / sigma ** 2
