"""TDMA baseline: 2K orthogonal slots, M spatial streams per slot, ZF.

Round i spends one MAC slot (user i -> relay, M independent BPSK streams
at power SNR/M each, identity transmit directions) and one BC multicast
slot (relay re-broadcasts its decoded streams through a scaled orthonormal
precoder).  Reported multicast rates are already normalized by the 1/(2K)
slot share.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernel
from .bc_phase import build_relay_precoder, user_receive_decode
from .channel import complex_gaussian
from .mac_phase import map_bits_bpsk
from .metrics import stream_rates_bc


@dataclass
class TdmaResult:
    decoded: object                 # (K, K, L) or None: user j's copy of message i
    multicast_rates: np.ndarray     # (K,) bits per channel use
    sum_rate: float
    slots: int


def tdma_dof_closed_form(K, M):
    """Pre-log of the TDMA sum rate: K*M/(2K) = M/2."""
    return Fraction(K * M, 2 * K)


def _pack_streams(bits, m):
    length = len(bits)
    t = -(-length // m)
    padded = np.zeros(m * t, dtype=np.uint8)
    padded[:length] = bits
    return padded.reshape(m, t), t


def tdma_run(net, snr, messages=None, noise_variance=0.0, rng=None):
    """One full TDMA exchange (or a rates-only pass when messages is None)."""
    K, M = net.K, net.M
    if rng is None and (noise_variance > 0 or messages is not None):
        raise ValueError("rng required for noisy or bit-level runs")
    per_stream_power = snr / M
    amp = np.sqrt(per_stream_power)
    length = 0 if messages is None else np.asarray(messages).shape[1]
    decoded = None
    if messages is not None:
        messages = np.asarray(messages, dtype=np.uint8)
        decoded = np.zeros((K, K, length), dtype=np.uint8)
        for j in range(K):
            decoded[j, j] = messages[j]
    message_rates = np.zeros(K)
    for i in range(K):
        h_up = net.uplink[i]
        h_inv = kernel.invert(h_up)
        v = build_relay_precoder(rng, M, M, snr) if rng is not None else \
            np.eye(M) * amp
        if noise_variance > 0:
            rho_mac = np.real(np.einsum("ij,ij->i", h_inv, np.conj(h_inv)))
            mac_rates = np.log2(1.0 + per_stream_power /
                                (noise_variance * rho_mac))
            bc_rates = np.stack([
                stream_rates_bc(net.downlink[j] @ v, noise_variance)
                for j in range(K)])
        else:
            mac_rates = np.full(M, np.inf)
            bc_rates = np.full((K, M), np.inf)
        # Message i's rate: worst destination's min(MAC, BC) summed over
        # streams, then the 1/(2K) slot-share normalization.
        per_dest = np.minimum(mac_rates, bc_rates).sum(axis=1)
        message_rates[i] = per_dest.min() / (2 * K)

        if messages is None:
            continue
        streams, t = _pack_streams(messages[i], M)
        s = amp * map_bits_bpsk(streams)
        n_r = complex_gaussian(rng, (M, t), noise_variance)
        y_r = h_up @ s + n_r
        s_hat = (h_inv @ y_r) / amp
        relay_bits = (np.real(s_hat) <= 0.0).astype(np.uint8)
        x = v @ map_bits_bpsk(relay_bits)
        for j in range(K):
            if j == i:
                continue
            n_j = complex_gaussian(rng, (M, t), noise_variance)
            y_j = net.downlink[j] @ x + n_j
            bits_j, _ = user_receive_decode(y_j, net.downlink[j], v)
            decoded[j, i] = bits_j.reshape(-1)[:length]
    return TdmaResult(decoded=decoded,
                      multicast_rates=message_rates,
                      sum_rate=float(message_rates.sum()),
                      slots=2 * K)
