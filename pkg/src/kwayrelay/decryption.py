"""Successive network-code decoding and keyless-observer ambiguity.

The relay's chain words are W_l XOR W_{l+1} for l = 0..K-2.  Any user can
telescope outward from its own message; an observer without a key faces a
two-fold ambiguity per bit (K unknowns, K-1 independent XOR equations).
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import LengthMismatch


@dataclass
class DecodedSet:
    owner: int
    messages: np.ndarray      # (K, L) uint8; row `owner` is the key itself


@dataclass
class AmbiguityReport:
    consistent_per_bit: np.ndarray   # tuples consistent with each bit position
    determined_messages: int         # messages pinned to a single value
    complementary: bool              # consistent tuples are bitwise complements


def build_chain(messages):
    """XOR words of consecutive messages; input shape (K, L) uint8."""
    w = np.asarray(messages, dtype=np.uint8)
    return np.bitwise_xor(w[:-1], w[1:])


def successive_decode(chain, owner, key):
    """Unlock all messages by XOR-walking the chain outward from `owner`.

    Upward: W_{i+1} = word_i ^ W_i starting from the key; downward:
    W_{i-1} = word_{i-1} ^ W_i.  Middle users walk both directions.
    """
    chain = np.asarray(chain, dtype=np.uint8)
    key = np.asarray(key, dtype=np.uint8)
    n_words, length = chain.shape
    k = n_words + 1
    if key.shape != (length,):
        raise LengthMismatch("key length %s != word length %d"
                             % (key.shape, length))
    if not 0 <= owner < k:
        raise ValueError("owner index out of range")
    out = np.zeros((k, length), dtype=np.uint8)
    out[owner] = key
    for j in range(owner + 1, k):
        out[j] = np.bitwise_xor(chain[j - 1], out[j - 1])
    for j in range(owner - 1, -1, -1):
        out[j] = np.bitwise_xor(chain[j], out[j + 1])
    return DecodedSet(owner=owner, messages=out)


def eavesdrop_ambiguity(chain, known_user=None, known_message=None):
    """Brute-force count of message tuples consistent with the chain.

    For each bit position, enumerates all 2^K assignments and keeps those
    reproducing every XOR word.  With no key this is always exactly 2
    (complementary tuples), so no individual message is determined; fixing
    one user's bits (`known_user`/`known_message`) collapses it to 1.
    """
    chain = np.asarray(chain, dtype=np.uint8)
    n_words, length = chain.shape
    k = n_words + 1
    counts = np.zeros(length, dtype=np.int64)
    # A message is determined only if, at every bit position, all
    # consistent tuples agree on its value.
    unanimous = np.ones(k, dtype=bool)
    complementary = True
    for t in range(length):
        word = chain[:, t]
        consistent = []
        for tup in product((0, 1), repeat=k):
            if known_user is not None and tup[known_user] != known_message[t]:
                continue
            if all((tup[l] ^ tup[l + 1]) == word[l] for l in range(n_words)):
                consistent.append(tup)
        counts[t] = len(consistent)
        for j in range(k):
            if len({tup[j] for tup in consistent}) != 1:
                unanimous[j] = False
        if len(consistent) == 2:
            a, b = consistent
            if any(x == y for x, y in zip(a, b)):
                complementary = False
    determined = int(np.sum(unanimous))
    return AmbiguityReport(consistent_per_bit=counts,
                           determined_messages=determined,
                           complementary=complementary)
