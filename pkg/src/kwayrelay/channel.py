"""Seed-driven Rayleigh block-fading channel and AWGN generation.

All randomness flows from a 64-bit master seed through numpy's Philox
counter-based generator.  Per-trial, per-purpose streams are derived with
SeedSequence(entropy=master_seed, spawn_key=(trial_index, tag)), so trials
are independent and each purpose gets a disjoint stream.  Gaussians are
synthesized by Box-Muller on uniform doubles.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernel

# Purpose tags for derived streams (documented constants; never reuse).
TAG_CHANNEL = 0
TAG_NOISE_MAC = 1
TAG_NOISE_BC = 2
TAG_MESSAGES = 3
TAG_RELAY_PRECODER = 4
TAG_TDMA = 5

# A channel draw is discarded as degenerate when any uplink matrix has
# smallest singular value below this fraction of its Frobenius norm.
SINGULAR_RTOL = 1e-9


@dataclass
class NetworkRealization:
    """One quasi-static block: K uplink and K downlink M x M matrices."""
    K: int
    M: int
    uplink: list       # uplink[i]: channel user i -> relay
    downlink: list     # downlink[i]: channel relay -> user i


@dataclass
class SimConfig:
    K: int
    snr: float                    # linear transmit power budget
    master_seed: int
    trials: int
    M: int = 0                    # 0 means the aligned-scheme default K-1
    noise_variance: float = 1.0
    payload_bits: int = 64

    def __post_init__(self):
        if self.K < 2:
            raise ValueError("K must be >= 2")
        if self.snr <= 0:
            raise ValueError("snr must be positive")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.M == 0:
            self.M = self.K - 1


def make_rng(master_seed, trial_index=0, tag=0):
    """Philox generator for one (trial, purpose) stream."""
    ss = np.random.SeedSequence(entropy=master_seed,
                                spawn_key=(trial_index, tag))
    return np.random.Generator(np.random.Philox(ss))


def _coerce_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return make_rng(seed)


def complex_gaussian(rng, shape, variance=1.0):
    """i.i.d. CN(0, variance) samples via Box-Muller on uniforms."""
    if variance == 0.0:
        return np.zeros(shape, dtype=np.complex128)
    u1 = 1.0 - rng.random(shape)   # (0, 1]; avoids log(0)
    u2 = rng.random(shape)
    return np.sqrt(-variance * np.log(u1)) * np.exp(2j * np.pi * u2)


def sample_network(seed, K, M):
    """Draw one NetworkRealization; resamples near-singular uplinks.

    Uplink and downlink are independent draws (FDD, no reciprocity).
    """
    if K < 2 or M < 1:
        raise ValueError("need K >= 2 and M >= 1")
    rng = _coerce_rng(seed)

    def draw():
        h = complex_gaussian(rng, (M, M))
        while kernel.min_singular(h) <= SINGULAR_RTOL * np.linalg.norm(h):
            h = complex_gaussian(rng, (M, M))
        return h

    uplink = [draw() for _ in range(K)]
    downlink = [draw() for _ in range(K)]
    return NetworkRealization(K=K, M=M, uplink=uplink, downlink=downlink)


def sample_noise(seed, dim, variance):
    """AWGN vector (or (dim, n) block if dim is a tuple) of CN(0, variance)."""
    if variance < 0:
        raise ValueError("variance must be >= 0")
    rng = _coerce_rng(seed)
    return complex_gaussian(rng, dim, variance)
