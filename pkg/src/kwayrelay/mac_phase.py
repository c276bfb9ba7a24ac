"""Uplink transmission, relay zero-forcing, and PNC demapping.

Messages are uncoded bit blocks; each bit occupies one symbol epoch as a
BPSK symbol.  Middle users repeat their symbol on both precoding
directions, so after alignment the relay sees U @ (pairwise symbol sums)
plus noise, and zero-forcing recovers the sums on the lattice {-2, 0, +2}.
The XOR of the paired bits is read off each sum directly.
"""

import numpy as np

from . import kernel


def map_bits_bpsk(bits):
    """0 -> +1, 1 -> -1 (unit average power)."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def effective_channel(prec):
    """Relay-side effective matrix with the aligned directions as columns."""
    return np.column_stack(prec.u)


def mac_transmit(net, prec, symbols, noise=0.0):
    """Relay-side receive block for BPSK symbols of shape (K,) or (K, L).

    Each user i sends its symbols through v1[i] + v2[i]; noise is an
    (M,)/(M, L) array (or 0.0 for the noiseless case).
    """
    symbols = np.asarray(symbols, dtype=np.float64)
    if symbols.ndim == 1:
        symbols = symbols[:, None]
    tx = np.stack([net.uplink[i] @ (prec.v1[i] + prec.v2[i])
                   for i in range(net.K)])        # (K, M)
    y = tx.T @ symbols + noise                    # (M, L)
    return y


def _as_block(v):
    v = np.asarray(v)
    return v[:, None] if v.ndim == 1 else v


def relay_decode(y, u_matrix):
    """Zero-forcing: inv(U) @ y, one pairwise symbol sum per stream."""
    return kernel.invert(u_matrix) @ _as_block(np.asarray(y, dtype=np.complex128))


def pnc_demap(sums):
    """XOR bit per stream: lattice point 0 -> 1, lattice points +-2 -> 0.

    The +-1 thresholds are the ML boundaries for an equal-power BPSK
    superposition.
    """
    return (np.abs(np.real(sums)) < 1.0).astype(np.uint8)
