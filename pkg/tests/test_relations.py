from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from aowf.core import all_strings
from aowf.relations import (EnumerationTooLarge, GenerationError, MockRelation, PredicateRelation,
                            SubsetSumInstance, SubsetSumRelation, check_length_discipline,
                            gen_subset_sum)

MOCK = MockRelation()
SS = SubsetSumRelation()


def mask(inst, chosen):
    """Selection mask for the given item positions, padded to witness length."""
    m = "".join("1" if i in chosen else "0" for i in range(len(inst.items)))
    return m + "0" * (len(inst.encoding) + 1 - len(m))


def test_mock_examples():
    assert MOCK.verify("1", "01")
    assert not MOCK.verify("1", "1")
    assert MOCK.enumerate_witnesses("1") == ("01", "11")


def test_mock_every_short_input_has_two_witnesses():
    for x in all_strings(8):
        wits = MOCK.enumerate_witnesses(x)
        assert len(wits) == 2
        for w in wits:
            assert MOCK.verify(x, w) and len(w) == len(x) + 1 and w != x


def test_subset_sum_examples():
    inst = SubsetSumInstance((1, 2, 3), 3)
    x = inst.encoding
    assert SS.verify(x, mask(inst, {0, 1}))
    assert SS.verify(x, mask(inst, {2}))
    assert not SS.verify(x, mask(inst, {0}))
    assert SS.enumerate_witnesses(x) == tuple(sorted([mask(inst, {0, 1}), mask(inst, {2})]))
    assert SS.enumerate_witnesses(SubsetSumInstance((2, 4), 1).encoding) == ()


def test_subset_sum_rejects_nonzero_padding():
    inst = SubsetSumInstance((1, 2, 3), 3)
    w = mask(inst, {2})
    assert not SS.verify(inst.encoding, w[:-1] + "1")


def test_subset_sum_structured_matches_bruteforce():
    generic = PredicateRelation(SS.verify, lambda n: n + 1, "ss-generic")
    for x in all_strings(10):
        assert SS.enumerate_witnesses(x) == generic.enumerate_witnesses(x, cap=1 << 11)


@given(st.integers(1, 4), st.lists(st.integers(1, 15), min_size=1, max_size=5), st.integers(1, 200))
def test_instance_encoding_roundtrip(width, raw, target):
    items = tuple(1 + (v - 1) % ((1 << width) - 1) for v in raw)
    target = 1 + (target - 1) % ((1 << (width + 4)) - 1)
    inst = SubsetSumInstance(items, target, width)
    assert SubsetSumInstance.decode(inst.encoding) == inst
    assert SubsetSumInstance.from_dict(inst.to_dict()) == inst


def test_decode_rejects_garbage():
    for x in ["", "0", "1", "10", "110", "1" * 9]:
        assert SubsetSumInstance.decode(x) is None
        assert SS.enumerate_witnesses(x) == ()


def test_structured_enumeration_matches_mask_search():
    inst = SubsetSumInstance((3, 5, 2, 8, 5), 10, 4)
    expected = []
    for bits_ in product("01", repeat=5):
        if sum(v for v, b in zip(inst.items, bits_) if b == "1") == 10:
            expected.append("".join(bits_) + "0" * (len(inst.encoding) + 1 - 5))
    assert SS.enumerate_witnesses(inst.encoding) == tuple(sorted(expected))


def test_enumeration_cap_truncates_and_refuses():
    inst = SubsetSumInstance((1, 1, 1, 1), 2, 1)
    assert len(SS.enumerate_witnesses(inst.encoding)) == 6
    assert len(SS.enumerate_witnesses(inst.encoding, cap=3)) == 3
    slow = PredicateRelation(lambda x, w: True, lambda n: n + 1, "all")
    with pytest.raises(EnumerationTooLarge):
        slow.enumerate_witnesses("0" * 20, cap=1000)


def test_length_discipline():
    check_length_discipline(MOCK)
    check_length_discipline(SS)
    with pytest.raises(ValueError):
        PredicateRelation(lambda x, w: True, lambda n: n, "bad")
    with pytest.raises(ValueError):
        PredicateRelation(lambda x, w: True, lambda n: 5, "flat")


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(4, 10), st.integers(1, 3))
def test_generated_instances(seed, n_items, want):
    inst = gen_subset_sum(seed, n_items, want)
    assert inst == gen_subset_sum(seed, n_items, want)
    x = inst.encoding
    wits = SS.enumerate_witnesses(x)
    assert len(wits) >= want
    for w in wits:
        assert SS.verify(x, w) and len(w) == len(x) + 1 > len(x)


def test_generation_examples():
    inst = gen_subset_sum(7, 3, 2)
    assert len(SS.enumerate_witnesses(inst.encoding)) >= 2
    with pytest.raises(GenerationError):
        gen_subset_sum(7, 2, 5)
    with pytest.raises(ValueError):
        gen_subset_sum(7, 17, 1)


def test_non_member():
    assert MOCK.find_non_member(max_rank=256) is None
    assert SS.find_non_member() == ""
