"""End-to-end trial pipelines for the aligned scheme and the DoF sweep.

A trial: sample a quasi-static block, build the alignment precoders,
run the MAC phase (BPSK epochs, relay ZF, PNC demap), broadcast the chain,
ZF-decode at every user, and untangle the chain with each user's own
message as the key.  Degenerate draws (eigen non-convergence or singular
effective channels) resample the whole block and are counted.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import alignment, bc_phase, channel, decryption, kernel, mac_phase, metrics
from .errors import MaxResamplesExceeded, NoConvergence, SingularMatrix

MAX_RESAMPLES = 100


@dataclass
class TrialRealization:
    net: channel.NetworkRealization
    prec: alignment.PrecoderSet
    u_matrix: np.ndarray
    resamples: int


@dataclass
class TrialResult:
    trial: int
    bits_wrong: np.ndarray     # (K, K): wrong bits in user j's copy of W_i
    message_ok: np.ndarray     # (K, K) bool; diagonal trivially True
    chain_bit_errors: int      # relay-side demap errors vs the XOR oracle
    sum_rate: float
    min_singular_u: float
    resamples: int


def realize_aligned(cfg, trial_index):
    """Sample one accepted channel block and its aligned precoders."""
    rng = channel.make_rng(cfg.master_seed, trial_index, channel.TAG_CHANNEL)
    resamples = 0
    while True:
        try:
            net = channel.sample_network(rng, cfg.K, cfg.K - 1)
            basis = alignment.chain_basis(net)
            prec = alignment.build_precoders(basis, net, cfg.snr)
            u_matrix = mac_phase.effective_channel(prec)
            # Probe invertibility now so a singular U resamples cleanly.
            mac_phase.relay_decode(np.zeros((net.M, 1)), u_matrix)
            return TrialRealization(net=net, prec=prec, u_matrix=u_matrix,
                                    resamples=resamples)
        except (NoConvergence, SingularMatrix):
            resamples += 1
            if resamples > MAX_RESAMPLES:
                raise MaxResamplesExceeded(
                    "trial %d: %d degenerate draws" % (trial_index, resamples))


def run_exchange_trial(cfg, trial_index, rates_only=False):
    """One aligned-scheme trial; returns a TrialResult."""
    real = realize_aligned(cfg, trial_index)
    net, prec, u_matrix = real.net, real.prec, real.u_matrix
    K, M, nv, L = cfg.K, net.M, cfg.noise_variance, cfg.payload_bits

    rng_v = channel.make_rng(cfg.master_seed, trial_index,
                             channel.TAG_RELAY_PRECODER)
    v_matrix = bc_phase.build_relay_precoder(rng_v, M, K - 1, cfg.snr)

    mac_rates = metrics.stream_rates_mac(u_matrix, nv)
    bc_rates = np.stack([metrics.stream_rates_bc(net.downlink[j] @ v_matrix, nv)
                         for j in range(K)])
    r = metrics.multicast_rates(mac_rates, bc_rates)
    sum_rate = float(r.sum())

    bits_wrong = np.zeros((K, K), dtype=np.int64)
    message_ok = np.ones((K, K), dtype=bool)
    chain_bit_errors = 0
    if not rates_only:
        rng_msg = channel.make_rng(cfg.master_seed, trial_index,
                                   channel.TAG_MESSAGES)
        messages = rng_msg.integers(0, 2, size=(K, L)).astype(np.uint8)
        symbols = mac_phase.map_bits_bpsk(messages)
        rng_nm = channel.make_rng(cfg.master_seed, trial_index,
                                  channel.TAG_NOISE_MAC)
        noise_r = channel.complex_gaussian(rng_nm, (M, L), nv)
        y_relay = mac_phase.mac_transmit(net, prec, symbols, noise_r)
        sums = mac_phase.relay_decode(y_relay, u_matrix)
        chain_hat = mac_phase.pnc_demap(sums)
        chain_bit_errors = int(np.sum(chain_hat !=
                                      decryption.build_chain(messages)))

        x_relay = bc_phase.relay_transmit(chain_hat, v_matrix)
        rng_nb = channel.make_rng(cfg.master_seed, trial_index,
                                  channel.TAG_NOISE_BC)
        for j in range(K):
            noise_j = channel.complex_gaussian(rng_nb, (M, L), nv)
            y_j = net.downlink[j] @ x_relay + noise_j
            user_chain, _ = bc_phase.user_receive_decode(
                y_j, net.downlink[j], v_matrix)
            recovered = decryption.successive_decode(
                user_chain, j, messages[j]).messages
            wrong = np.sum(recovered != messages, axis=1)
            bits_wrong[j] = wrong
            message_ok[j] = wrong == 0

    return TrialResult(trial=trial_index,
                       bits_wrong=bits_wrong,
                       message_ok=message_ok,
                       chain_bit_errors=chain_bit_errors,
                       sum_rate=sum_rate,
                       min_singular_u=float(kernel.min_singular(u_matrix)),
                       resamples=real.resamples)


def run_trials(cfg, rates_only=False, threads=1):
    """All trials of a config, reduced in trial-index order."""
    idx = range(cfg.trials)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(
                lambda t: run_exchange_trial(cfg, t, rates_only), idx))
    return [run_exchange_trial(cfg, t, rates_only) for t in idx]


def tdma_trial(cfg, trial_index, rates_only=False):
    """One TDMA baseline trial on an independently sampled block."""
    from .tdma import tdma_run
    rng = channel.make_rng(cfg.master_seed, trial_index, channel.TAG_CHANNEL)
    rng_t = channel.make_rng(cfg.master_seed, trial_index, channel.TAG_TDMA)
    resamples = 0
    while True:
        try:
            net = channel.sample_network(rng, cfg.K, cfg.M)
            messages = None
            if not rates_only:
                rng_msg = channel.make_rng(cfg.master_seed, trial_index,
                                           channel.TAG_MESSAGES)
                messages = rng_msg.integers(
                    0, 2, size=(cfg.K, cfg.payload_bits)).astype(np.uint8)
            result = tdma_run(net, cfg.snr, messages,
                              noise_variance=cfg.noise_variance, rng=rng_t)
            return result, resamples
        except SingularMatrix:
            resamples += 1
            if resamples > MAX_RESAMPLES:
                raise MaxResamplesExceeded(
                    "trial %d: %d degenerate draws" % (trial_index, resamples))


def dof_point(scheme, cfg, threads=1):
    """Mean sum rate and total resamples at one SNR point."""
    if scheme == "aligned":
        results = run_trials(cfg, rates_only=True, threads=threads)
        rates = [r.sum_rate for r in results]
        resamples = sum(r.resamples for r in results)
    elif scheme == "tdma":
        rates, resamples = [], 0
        for t in range(cfg.trials):
            res, rs = tdma_trial(cfg, t, rates_only=True)
            rates.append(res.sum_rate)
            resamples += rs
    else:
        raise ValueError("unknown scheme %r" % scheme)
    return float(np.mean(rates)), resamples


def dof_curve(scheme, K, M, snr_db_grid, trials, master_seed,
              noise_variance=1.0, threads=1):
    """Mean sum rate across an SNR grid plus the fitted pre-log slope."""
    sums, resamples = [], []
    # Common random numbers: every SNR point reuses the same per-trial
    # channel streams, so per-block constants cancel in the slope fit.
    for snr_db in snr_db_grid:
        cfg = channel.SimConfig(K=K, M=M, snr=10.0 ** (snr_db / 10.0),
                                master_seed=master_seed,
                                trials=trials,
                                noise_variance=noise_variance)
        mean_rate, rs = dof_point(scheme, cfg, threads=threads)
        sums.append(mean_rate)
        resamples.append(rs)
    slope = metrics.dof_slope(snr_db_grid, sums)
    return metrics.DofEstimate(scheme=scheme, snr_grid_db=list(snr_db_grid),
                               sum_rates=sums, slope=slope), resamples
