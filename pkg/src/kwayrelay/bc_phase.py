"""Broadcast phase: relay precoding and per-user zero-forcing detection."""

import numpy as np

from . import kernel
from .channel import complex_gaussian
from .mac_phase import _as_block, map_bits_bpsk


def build_relay_precoder(rng, M, streams, snr):
    """Scaled random-orthonormal relay precoder, full rank by construction.

    Columns are orthonormal (seeded Haar-ish draw via QR) scaled by
    sqrt(snr/streams), so unit-power BPSK streams meet the relay power
    budget with equality.
    """
    if streams > M:
        raise ValueError("streams must be <= M")
    g = complex_gaussian(rng, (M, streams))
    q, r = np.linalg.qr(g)
    # Fix the QR sign ambiguity for reproducibility across BLAS builds.
    q = q * np.where(np.diag(r) == 0, 1.0,
                     np.conj(np.sign(np.diag(r))))
    return q * np.sqrt(snr / streams)


def relay_transmit(chain_bits, v_matrix):
    """Transmit block x = V @ bpsk(bits); bits shape (K-1,) or (K-1, L)."""
    return v_matrix @ _as_block(map_bits_bpsk(chain_bits))


def user_receive_decode(y, h_down, v_matrix):
    """ZF detection of the broadcast chain bits at one user.

    Returns (bit estimates, soft ZF outputs); raises SingularMatrix on a
    degenerate effective channel (caller resamples the trial).
    """
    q_eff = h_down @ v_matrix
    soft = kernel.invert(q_eff) @ _as_block(np.asarray(y, dtype=np.complex128))
    bits = (np.real(soft) <= 0.0).astype(np.uint8)
    return bits, soft
