import json

import pytest
from hypothesis import given, settings, strategies as st

from aowf.constructions import build_sigma, default_trashbin, totalize
from aowf.core import all_strings, pair_encode as P
from aowf.functions import Concatenation
from aowf.relations import MockRelation
from aowf.protocols import (StringSampler, WitnessFormSampler, attack_bound,
                            eve_bruteforce_attack, eve_combination_attack, keygen, run_multi_party,
                            run_two_party, seeded_multi_party, seeded_signature, seeded_two_party,
                            sign, verify_sig)

MOCK = MockRelation()
SIGMA = build_sigma(MOCK)
TB = default_trashbin(SIGMA, MOCK)
ST = totalize(SIGMA, TB)
CAT = Concatenation()
SAMPLER = WitnessFormSampler(MOCK, all_strings(3))
q = "1"


def test_two_party_concat_example():
    t = run_two_party(CAT, "0", "1", "1")
    assert t.message("m1").payload == "10" and t.message("m2").payload == "01"
    assert t.keys == {"alice": "101", "bob": "101"} and t.agreed


def test_two_party_sigma_example():
    t = run_two_party(ST, P(q, "11"), P(q, "01"), P(q, "11"))
    assert t.message("m1").payload == P(q, "01")
    assert t.message("m2").payload == P(q, "11")
    assert set(t.keys.values()) == {P(q, "01")}


def test_two_party_same_values():
    v = P(q, "11")
    assert run_two_party(ST, v, v, v).agreed


def test_multi_party_examples():
    t = run_multi_party(ST, P(q, "11"), [P(q, "01"), P(q, "11"), P(q, "11")])
    assert t.agreed and set(t.keys.values()) == {P(q, "01")}
    two = run_multi_party(CAT, "0", ["1", "11"])  # same chain as the two-party run
    assert set(two.keys.values()) == set(run_two_party(CAT, "0", "1", "11").keys.values())
    cat3 = run_multi_party(CAT, "0", ["1", "00", "11"])
    assert not cat3.agreed and cat3.replay(CAT)
    with pytest.raises(ValueError):
        run_multi_party(CAT, "0", ["1"])


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_multi_party_sigma_seeded(k):
    for i in range(25):
        t = seeded_multi_party(ST, SAMPLER, 11, i, k)
        assert t.agreed and t.replay(ST)
        assert len(t.keys) == k


def test_multi_party_key_is_global_min():
    for i in range(30):
        t = seeded_multi_party(ST, SAMPLER, 5, i, 4)
        from aowf.core import pair_decode

        parts = [pair_decode(v) for v in [t.public, *t.secrets.values()]]
        base = parts[0][0]
        assert {b for b, _ in parts} == {base}
        assert set(t.keys.values()) == {P(base, min(w for _, w in parts))}


def test_undefined_operation_rejected():
    with pytest.raises(ValueError):
        run_two_party(SIGMA, P(q, q), P(q, q), P(q, q))


def test_signature_examples():
    assert sign(CAT, "01", keygen(CAT, "0", "1")) == "011"
    keys = keygen(ST, P(q, "11"), P(q, "01"))
    assert keys.consistent(ST)
    assert sign(ST, P(q, "11"), keys) == P(q, "01")
    s = sign(ST, P(q, "11"), keys)
    assert verify_sig(ST, P(q, "11"), s, keys.public)
    assert not verify_sig(ST, P(q, "11"), P("0", "00"), keys.public)
    # a message of another shape signs to the trashbin
    assert sign(ST, "1", keys) == TB


def test_signature_round_trip_seeded():
    for i in range(100):
        keys, m, s = seeded_signature(ST, SAMPLER, 3, i)
        assert keys.consistent(ST) and verify_sig(ST, m, s, keys.public)


def test_attack_examples():
    t = run_two_party(ST, P(q, "11"), P(q, "01"), P(q, "11"))
    assert eve_combination_attack(ST, t) == (P(q, "01"), True)
    t = run_two_party(CAT, "0", "1", "1")
    assert eve_combination_attack(CAT, t) == ("1001", False)
    t = run_two_party(CAT, "", "1", "10")
    assert eve_combination_attack(CAT, t)[1]


def test_bruteforce_attack_examples():
    t = run_two_party(ST, P(q, "11"), P(q, "01"), P(q, "11"))
    found, probes = eve_bruteforce_attack(ST, t, attack_bound(t))
    assert found is not None and ST(found, t.public) == t.message("m1").payload and probes >= 1
    found, probes = eve_bruteforce_attack(ST, t, 3, prune=False)
    assert found is None and probes == 3
    t = run_two_party(CAT, "01", "110", "1")
    found, _ = eve_bruteforce_attack(CAT, t, attack_bound(t))
    assert found == "110"


def test_seeded_sessions_deterministic_and_hygienic():
    for i in range(20):
        for f, sampler in ((ST, SAMPLER), (CAT, StringSampler())):
            a = seeded_two_party(f, sampler, 9, i)
            b = seeded_two_party(f, sampler, 9, i)
            assert json.dumps(a.to_dict(True), sort_keys=True) == json.dumps(b.to_dict(True), sort_keys=True)
            d = a.to_dict()
            assert "secrets" not in d
            assert d["observations"] == [a.public] + [m.payload for m in a.messages]
            assert set(d["observations"]) <= {a.public} | {m.payload for m in a.messages}
            assert a.replay(f) and a.agreed
    assert seeded_two_party(CAT, StringSampler(), 9, 0).session != seeded_two_party(CAT, StringSampler(), 9, 1).session


@settings(max_examples=100, deadline=None)
@given(st.text("01", max_size=6), st.text("01", max_size=6), st.text("01", max_size=6))
def test_concat_two_party_always_agrees(x, y, z):
    t = run_two_party(CAT, x, y, z)
    assert t.agreed and t.replay(CAT)
    assert eve_combination_attack(CAT, t)[1] == (x == "")


def test_witness_sampler_requires_bases():
    from aowf.relations import SubsetSumRelation

    with pytest.raises(ValueError):
        WitnessFormSampler(SubsetSumRelation(), [""])
