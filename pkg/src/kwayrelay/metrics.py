"""Rates, multicast rates, sum rate, and the high-SNR slope estimate.

Per-stream rates use the Gaussian-signaling proxy log2(1 + SINR) with the
post-ZF noise amplification on the diagonal of inv(A) inv(A)^H.  The MAC
streams carry a coherent pair sum (signal power 2); BC streams carry unit
power.  The proxy has the correct pre-log, which is what the degrees-of-
freedom comparison measures.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .errors import InsufficientGrid


@dataclass
class RateReport:
    snr_db: float
    per_stream_mac: np.ndarray            # (K-1,)
    per_stream_bc_per_user: np.ndarray    # (K, K-1)
    multicast_rates: np.ndarray           # (K,)
    sum_rate: float


@dataclass
class DofEstimate:
    scheme: str
    snr_grid_db: list
    sum_rates: list
    slope: float


def _zf_noise_amplification(a):
    inv = kernel.invert(a)
    return np.real(np.einsum("ij,ij->i", inv, np.conj(inv)))


def stream_rates_mac(u_matrix, noise_variance):
    """Per-stream relay rate: log2(1 + 2 / (sigma^2 * rho_l))."""
    rho = _zf_noise_amplification(u_matrix)
    if noise_variance == 0.0:
        return np.full(len(rho), np.inf)
    return np.log2(1.0 + 2.0 / (noise_variance * rho))


def stream_rates_bc(q_matrix, noise_variance):
    """Per-stream downlink rate at one user: log2(1 + 1 / (sigma^2 * rho))."""
    rho = _zf_noise_amplification(q_matrix)
    if noise_variance == 0.0:
        return np.full(len(rho), np.inf)
    return np.log2(1.0 + 1.0 / (noise_variance * rho))


def multicast_rates(mac_rates, bc_rates_per_user):
    """End-to-end multicast rate per message (all equal by construction).

    Each stream's end-to-end rate is half (two-phase time split) the
    minimum of its MAC rate and its worst BC rate over users; a multicast
    message traverses every chain link over the union of destinations, so
    each R_i is the minimum over streams.
    """
    mac_rates = np.asarray(mac_rates, dtype=np.float64)
    bc = np.asarray(bc_rates_per_user, dtype=np.float64)
    per_stream = 0.5 * np.minimum(mac_rates, bc.min(axis=0))
    k = bc.shape[0]
    return np.full(k, per_stream.min())


def rate_report(snr_db, mac_rates, bc_rates_per_user):
    r = multicast_rates(mac_rates, bc_rates_per_user)
    return RateReport(snr_db=snr_db,
                      per_stream_mac=np.asarray(mac_rates),
                      per_stream_bc_per_user=np.asarray(bc_rates_per_user),
                      multicast_rates=r,
                      sum_rate=float(r.sum()))


def dof_slope(snr_grid_db, sum_rates):
    """Least-squares slope of sum rate vs log2(SNR) over the top half grid.

    Requires >= 4 strictly increasing points spanning >= 15 dB.
    """
    grid = np.asarray(snr_grid_db, dtype=np.float64)
    rates = np.asarray(sum_rates, dtype=np.float64)
    if len(grid) < 4:
        raise InsufficientGrid("need at least 4 grid points")
    if np.any(np.diff(grid) <= 0):
        raise InsufficientGrid("grid must be strictly increasing")
    if grid[-1] - grid[0] < 15.0:
        raise InsufficientGrid("grid must span at least 15 dB")
    top = grid >= 0.5 * (grid[0] + grid[-1])
    x = np.log2(10.0 ** (grid[top] / 10.0))
    slope, _ = np.polyfit(x, rates[top], 1)
    return float(slope)


def binomial_sigma(p, n):
    """Standard error of an empirical fraction (used for trend checks)."""
    return np.sqrt(max(p * (1.0 - p), 1.0 / n) / n)


@dataclass
class MerReport:
    snr_db: float
    trials: int
    mer: np.ndarray           # (K, K): user j's error fraction on message i
    overall: float            # mean over off-diagonal (destination, source)
    bit_error_rate: float
    chain_bit_error_rate: float
    resamples: int


def message_error_rate(cfg, threads=1):
    """Monte Carlo message error rate for the aligned scheme."""
    from .pipeline import run_trials
    results = run_trials(cfg, rates_only=False, threads=threads)
    k = cfg.K
    wrong = np.zeros((k, k), dtype=np.int64)
    bits_wrong = 0
    chain_errs = 0
    for r in results:
        wrong += ~r.message_ok
        bits_wrong += int(r.bits_wrong.sum())
        chain_errs += r.chain_bit_errors
    mer = wrong / cfg.trials
    off = ~np.eye(k, dtype=bool)
    total_bits = cfg.trials * k * (k - 1) * cfg.payload_bits
    snr_db = 10.0 * np.log10(cfg.snr)
    return MerReport(snr_db=snr_db, trials=cfg.trials, mer=mer,
                     overall=float(mer[off].mean()),
                     bit_error_rate=bits_wrong / total_bits,
                     chain_bit_error_rate=chain_errs /
                     (cfg.trials * (k - 1) * cfg.payload_bits),
                     resamples=sum(r.resamples for r in results))
