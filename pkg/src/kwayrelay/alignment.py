"""MAC-phase precoder construction by chain-wise signal space alignment.

Link l (l = 0..K-2, zero-based) couples user l and user l+1 through a
shared transmit direction f_l: the dominant generalized eigenvector of the
uplink pair, so both users' signals land on one relay-side direction u_l.
Complex gains are set so the two received vectors are *equal* (magnitude
and phase), making the relay observe the coherent sum s_l + s_{l+1} on
stream l, and so that every user respects its power budget.
"""

from dataclasses import dataclass

import numpy as np

from . import kernel


@dataclass
class AlignmentLink:
    f: np.ndarray        # unit-norm transmit basis vector shared by the pair
    lam: complex         # generalized eigenvalue: H_up[l+1] f = lam * H_up[l] f


@dataclass
class AlignmentBasis:
    links: list          # K-1 AlignmentLink records


@dataclass
class PrecoderSet:
    """Per-user transmit vectors and the common relay-side directions.

    v1[i] is user i's first-direction precoder; v2[i] the second (the zero
    vector for the two edge users).  u[l] is the received direction shared
    by link l; gains are folded into the vectors.
    """
    v1: list
    v2: list
    u: list
    snr: float


def chain_basis(net):
    """Dominant eigenpair of inv(H_up[l]) @ H_up[l+1] for each chain link.

    Raises NoConvergence for a near-degenerate spectrum (caller resamples
    the channel block).
    """
    if net.M != net.K - 1:
        raise ValueError("alignment requires M = K - 1 (got M=%d, K=%d)"
                         % (net.M, net.K))
    links = []
    for l in range(net.K - 1):
        a = kernel.invert(net.uplink[l]) @ net.uplink[l + 1]
        lam, f = kernel.dominant_eigenpair(a)
        links.append(AlignmentLink(f=f, lam=lam))
    return AlignmentBasis(links=links)


def _direction_budget(i, K, snr):
    # Power available to one direction: the full budget split over the
    # user's active directions (1 for edge users, 2 for middle users).
    return snr if i in (0, K - 1) else snr / 2.0


def build_precoders(basis, net, snr):
    """Gains per link: the weaker side transmits at the full pair budget.

    Within link l the pair budget is the minimum of the two sides'
    per-direction budgets; the side with the smaller channel gain ||H f||
    uses it fully and the other side's complex gain (magnitude and phase,
    via the eigenvalue) is set so both received vectors equal u_l exactly.
    """
    K, M = net.K, net.M
    zero = np.zeros(M, dtype=np.complex128)
    v1 = [None] * K
    v2 = [zero.copy() for _ in range(K)]
    u = []
    for l, link in enumerate(basis.links):
        budget = min(_direction_budget(l, K, snr),
                     _direction_budget(l + 1, K, snr))
        g_lo = np.linalg.norm(net.uplink[l] @ link.f)
        g_hi = np.linalg.norm(net.uplink[l + 1] @ link.f)
        if g_lo <= g_hi:
            a = np.sqrt(budget)           # user l at full pair budget
            b = a / link.lam
        else:
            b = np.sqrt(budget)           # user l+1 at full pair budget
            a = b * link.lam
        # user l's later direction (v1 for the first edge user, else v2)
        if l == 0:
            v1[0] = a * link.f
        else:
            v2[l] = a * link.f
        v1[l + 1] = b * link.f
        u.append(a * (net.uplink[l] @ link.f))
    return PrecoderSet(v1=v1, v2=v2, u=u, snr=snr)


def alignment_residual(prec, net):
    """Worst relative mismatch between the two received vectors per link."""
    K = net.K
    worst = 0.0
    for l in range(K - 1):
        second = prec.v1[0] if l == 0 else prec.v2[l]
        lhs = net.uplink[l] @ second
        rhs = net.uplink[l + 1] @ prec.v1[l + 1]
        worst = max(worst, np.linalg.norm(lhs - rhs) / np.linalg.norm(prec.u[l]))
    return worst


def user_powers(prec):
    """||v1||^2 + ||v2||^2 per user (checked against the SNR budget)."""
    return np.array([np.linalg.norm(a) ** 2 + np.linalg.norm(b) ** 2
                     for a, b in zip(prec.v1, prec.v2)])
