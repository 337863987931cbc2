from itertools import product

import pytest

from gzero.words import (MAX_NATURAL, SparseWord, all_words, last_difference,
                         m_of, pair, phi, phi_inv, psi, psi_inv, sn, unpair,
                         xor_words)


def enumerate_words(limit):
    """Length-lex enumeration straight from itertools, as an oracle for psi."""
    out = []
    length = 0
    while len(out) < limit:
        out.extend("".join(t) for t in product("01", repeat=length))
        length += 1
    return out[:limit]


def pair_by_counting(n, p):
    """Walk the diagonals until (n, p) comes up."""
    q = 0
    for s in range(n + p + 1):
        for b in range(s + 1):
            if (s - b, b) == (n, p):
                return q
            q += 1


def test_psi_matches_enumeration():
    for n, w in enumerate(enumerate_words(5000)):
        assert psi(n) == w
        assert psi_inv(w) == n


@pytest.mark.parametrize("n,want", [(0, ""), (1, "0"), (2, "1"), (3, "00"), (6, "11"), (7, "000")])
def test_psi_values(n, want):
    assert psi(n) == want


@pytest.mark.parametrize("n,want", [(0, ""), (3, "000"), (4, "0100"), (6, "110000")])
def test_sn_values(n, want):
    assert sn(n) == want


def test_sn_length_and_density():
    assert all(len(sn(n)) == n for n in range(100_000))
    for l in range(15):
        for s in all_words(l):
            assert sn(psi_inv(s)).startswith(s)


@pytest.mark.parametrize("n,p,want", [(0, 0, 0), (1, 0, 1), (0, 1, 2), (1, 1, 4)])
def test_pair_values(n, p, want):
    assert pair(n, p) == want


def test_pair_against_counting():
    for n in range(25):
        for p in range(25):
            assert pair(n, p) == pair_by_counting(n, p)


def test_round_trips():
    for n in range(0, 1001, 7):
        for p in range(0, 1001, 11):
            assert unpair(pair(n, p)) == (n, p)
            assert phi_inv(phi(n, p)) == (n, p)
    for q in range(0, 1_000_000, 97):
        assert pair(*unpair(q)) == q
        assert phi(*phi_inv(q)) == q


@pytest.mark.parametrize("q,want", [(0, (0, 0)), (3, (2, 0)), (5, (0, 2))])
def test_unpair_values(q, want):
    assert unpair(q) == want


@pytest.mark.parametrize("q,want", [(0, 0), (3, 2), (5, 2)])
def test_m_of_values(q, want):
    assert m_of(q) == want


def test_m_of_is_coordinate_sum():
    assert all(m_of(q) == sum(unpair(q)) for q in range(1_000_000))
    # m_of is the largest m with m(m+1)/2 <= q
    for q in range(2000):
        m = 0
        while (m + 1) * (m + 2) // 2 <= q:
            m += 1
        assert m_of(q) == m


def test_phi_values():
    assert phi(0, 0) == 0 and phi(1, 0) == 1 and phi(0, 1) == 3
    assert phi_inv(0) == (0, 0) and phi_inv(3) == (0, 1) and phi_inv(1) == (1, 0)


def test_successor_identity():
    for p in range(0, 1000, 13):
        for m in range(0, 1000, 17):
            assert pair(p + 1, m) + 1 == pair(p, m + 1)


def test_pair_overflow_is_reported():
    with pytest.raises(OverflowError):
        pair(1 << 33, 1 << 33)
    big = pair(1 << 40, 3, None)
    assert big > MAX_NATURAL and unpair(big) == (1 << 40, 3)


@pytest.mark.parametrize("bad", [-1, 1.5, True])
def test_rejects_non_naturals(bad):
    with pytest.raises(ValueError):
        psi(bad)


def test_rejects_non_words():
    with pytest.raises(ValueError):
        psi_inv("012")


def test_sparse_word_round_trip():
    for l in range(7):
        for w in all_words(l):
            s = SparseWord.of(w)
            assert s.to_str() == w
            assert s.value() == (int(w, 2) if w else 0)
            for k in range(l + 1):
                assert s.prefix(k).to_str() == w[:k]
                assert s.suffix_from(k).to_str() == w[k:]


def test_sparse_word_operations():
    a = SparseWord.of("0101")
    assert (a + "11").to_str() == "010111"
    assert a.pad(3).to_str() == "0101000"
    assert a.is_prefix_of("01011") and not a.is_prefix_of("0111")
    assert a.ones_in(0, 3) == (1,) and a.stripped_length() == 4
    huge = SparseWord(10 ** 30, (5, 10 ** 29))
    assert huge.bit(10 ** 29) == 1 and huge.bit(6) == 0
    with pytest.raises(OverflowError):
        huge.to_str()


def test_last_difference():
    assert last_difference("0110", "0011") == 3
    assert last_difference("0100", "0000") == 1
    assert last_difference("01", "01") is None
    assert last_difference(SparseWord.of("0100"), "0000") == 1


def test_xor_words():
    assert xor_words("0110", "0101") == "0011"
    with pytest.raises(ValueError):
        xor_words("0", "01")
