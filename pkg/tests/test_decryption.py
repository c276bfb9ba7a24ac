import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kwayrelay import decryption
from kwayrelay.errors import LengthMismatch


def random_messages(seed, k, length):
    return np.random.default_rng(seed).integers(
        0, 2, size=(k, length)).astype(np.uint8)


def test_chain_definition():
    w = random_messages(0, 4, 8)
    chain = decryption.build_chain(w)
    for l in range(3):
        assert np.array_equal(chain[l], w[l] ^ w[l + 1])


def test_user1_forward_walk_order():
    # W2 from word 1 and the key, then W3 from word 2, then W4 from word 3
    w = random_messages(1, 4, 8)
    chain = decryption.build_chain(w)
    out = decryption.successive_decode(chain, 0, w[0]).messages
    assert np.array_equal(out[1], chain[0] ^ w[0])
    assert np.array_equal(out[2], chain[1] ^ out[1])
    assert np.array_equal(out[3], chain[2] ^ out[2])
    assert np.array_equal(out, w)


def test_middle_user_walks_both_directions():
    w = random_messages(2, 4, 8)
    chain = decryption.build_chain(w)
    out = decryption.successive_decode(chain, 2, w[2]).messages
    assert np.array_equal(out, w)


def test_all_zero_messages():
    w = np.zeros((4, 8), dtype=np.uint8)
    chain = decryption.build_chain(w)
    assert not chain.any()
    assert not decryption.successive_decode(chain, 1, w[1]).messages.any()


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_round_trip_every_owner(k):
    w = random_messages(k, k, 32)
    chain = decryption.build_chain(w)
    for owner in range(k):
        out = decryption.successive_decode(chain, owner, w[owner]).messages
        assert np.array_equal(out, w)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 6), st.integers(1, 16), st.integers(0, 2**31))
def test_chain_telescoping(k, length, seed):
    w = random_messages(seed, k, length)
    chain = decryption.build_chain(w)
    for lo in range(k - 1):
        for hi in range(lo, k - 1):
            folded = np.bitwise_xor.reduce(chain[lo:hi + 1], axis=0)
            assert np.array_equal(folded, w[lo] ^ w[hi + 1])


def test_key_bit_flip_propagates_everywhere():
    w = random_messages(5, 5, 16)
    chain = decryption.build_chain(w)
    bad_key = w[2].copy()
    bad_key[3] ^= 1
    out = decryption.successive_decode(chain, 2, bad_key).messages
    diff = out ^ w
    # XOR walking re-uses the key on both sides: one flipped key bit
    # flips that bit position in every recovered message
    assert np.array_equal(diff[:, 3], np.ones(5, dtype=np.uint8))
    diff[:, 3] = 0
    assert not diff.any()


def test_length_mismatch():
    chain = decryption.build_chain(random_messages(0, 4, 8))
    with pytest.raises(LengthMismatch):
        decryption.successive_decode(chain, 0, np.zeros(7, dtype=np.uint8))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_eavesdropper_two_fold_ambiguity(k):
    chain = decryption.build_chain(random_messages(k, k, 12))
    rep = decryption.eavesdrop_ambiguity(chain)
    assert np.all(rep.consistent_per_bit == 2)
    assert rep.determined_messages == 0
    assert rep.complementary


def test_with_key_collapses_ambiguity():
    w = random_messages(9, 4, 12)
    chain = decryption.build_chain(w)
    rep = decryption.eavesdrop_ambiguity(chain, known_user=1,
                                         known_message=w[1])
    assert np.all(rep.consistent_per_bit == 1)
    assert rep.determined_messages == 4
