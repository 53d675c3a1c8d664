import pytest
from hypothesis import given, strategies as st

from aowf.core import (BOTTOM, all_strings, cantor_pair, cantor_unpair, extend_eval, lex_min,
                       pair_decode, pair_encode, rank, unrank)
from aowf.functions import CallableFn, Concatenation

from oracles import cantor_by_walking, length_lex_strings

bits = st.text(alphabet="01", max_size=24)


def test_rank_matches_enumeration():
    strings = length_lex_strings(8)
    assert [rank(s) for s in strings] == list(range(len(strings)))
    assert all_strings(8) == strings


@pytest.mark.parametrize("s,n", [("", 0), ("1", 2), ("001", 8)])
def test_rank_examples(s, n):
    assert rank(s) == n


@pytest.mark.parametrize("n,s", [(0, ""), (3, "00"), (8, "001")])
def test_unrank_examples(n, s):
    assert unrank(n) == s


def test_rank_unrank_inverse_exhaustive():
    for s in length_lex_strings(16):
        assert unrank(rank(s)) == s
    for n in range(2 ** 17 - 1):
        assert rank(unrank(n)) == n


def test_rank_rejects_non_bits():
    with pytest.raises(ValueError):
        rank("012")


def test_cantor_against_walk():
    for m in range(12):
        for n in range(12):
            k = cantor_by_walking(m, n)
            assert cantor_pair(m, n) == k
            assert cantor_unpair(k) == (m, n)


@pytest.mark.parametrize("u,v,s", [("", "", ""), ("0", "1", "001"), ("1", "", "00")])
def test_pair_examples(u, v, s):
    assert pair_encode(u, v) == s
    assert pair_decode(s) == (u, v)


def test_pair_bijective_small():
    strings = length_lex_strings(4)
    images = {pair_encode(u, v) for u in strings for v in strings}
    assert len(images) == len(strings) ** 2


@given(bits, bits)
def test_pair_roundtrip_and_length(u, v):
    s = pair_encode(u, v)
    assert pair_decode(s) == (u, v)
    assert len(s) <= 2 * (len(u) + len(v)) + 4


@given(bits)
def test_decode_encode_roundtrip(s):
    assert pair_encode(*pair_decode(s)) == s


@given(st.integers(min_value=0, max_value=2 ** 200))
def test_big_ranks(n):
    assert rank(unrank(n)) == n


@pytest.mark.parametrize("w1,w2,out", [("01", "11", "01"), ("10", "01", "01"), ("0110", "0110", "0110")])
def test_lex_min(w1, w2, out):
    assert lex_min(w1, w2) == out


def test_lex_min_rejects_unequal_lengths():
    with pytest.raises(ValueError):
        lex_min("0", "00")


@given(st.integers(0, 10).flatmap(lambda n: st.tuples(st.text("01", min_size=n, max_size=n),
                                                      st.text("01", min_size=n, max_size=n))))
def test_lex_min_commutative_idempotent(pair):
    a, b = pair
    assert lex_min(a, b) == lex_min(b, a)
    assert lex_min(a, a) == a


def test_extend_eval_cases():
    f = CallableFn(lambda a, b: a, "first", domain={("0", "1")})
    assert extend_eval(f, BOTTOM, "0") is BOTTOM
    assert extend_eval(f, "0", BOTTOM) is BOTTOM
    assert extend_eval(f, "0", "1") == "0"
    assert extend_eval(f, "1", "0") is BOTTOM


@given(bits)
def test_bottom_absorbs(s):
    f = Concatenation()
    assert extend_eval(f, BOTTOM, s) is BOTTOM
    assert extend_eval(f, s, BOTTOM) is BOTTOM
    assert BOTTOM != s


def test_eval_present_iff_in_domain():
    f = CallableFn(lambda a, b: a + b, "partial", domain={("0", "1"), ("", "")})
    for a in length_lex_strings(2):
        for b in length_lex_strings(2):
            assert (f.eval(a, b) is not None) == f.in_domain(a, b)
