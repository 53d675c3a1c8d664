"""Key agreement and signature protocols over a 2-ary operation, with a passive eavesdropper.

Two parties: Alice holds y, Bob holds z, x is public.  Alice sends y.x,
Bob sends x.z; Alice's key is y.(x.z), Bob's is (y.x).z.  The keys agree
whenever the operation is associative on that chain.

k parties run a two-pass ring.  The upward pass carries, for each prefix of
parties, x combined with the prefix and with the prefix minus each single
member; the last party combines its secret in and broadcasts the
"all but j" values back, so each party j ends with x combined with all
other secrets and then applies its own.  Agreement needs associativity and
commutativity.

Every message and key records the names of its operands so a transcript
can be replayed against the operation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import Bits, PartialBinaryFn, pair_encode, rank
from .relations import WitnessRelation
from .rng import derive_seed, make_rng, random_bits
from .verification import search_partner


@dataclass(frozen=True)
class Message:
    sender: str
    receiver: str
    label: str
    payload: Bits
    operands: tuple[str, ...]


@dataclass
class Transcript:
    session: str
    kind: str
    fn: str
    public: Bits
    secrets: dict
    messages: list = field(default_factory=list)
    keys: dict = field(default_factory=dict)
    key_operands: dict = field(default_factory=dict)
    randomness: str = ""
    attacks: dict = field(default_factory=dict)

    @property
    def observations(self) -> list[Bits]:
        """What the eavesdropper sees: the public value and every payload."""
        return [self.public] + [m.payload for m in self.messages]

    @property
    def agreed(self) -> bool:
        return len(set(self.keys.values())) == 1

    def message(self, label: str) -> Message:
        for m in self.messages:
            if m.label == label:
                return m
        raise KeyError(label)

    def replay(self, f: PartialBinaryFn) -> bool:
        """Recompute every payload and key from the recorded operands."""
        env = {"x": self.public, **self.secrets}
        for m in self.messages:
            if _combine(f, env, m.operands) != m.payload:
                return False
            env[m.label] = m.payload
        return all(_combine(f, env, self.key_operands[p]) == k for p, k in self.keys.items())

    def to_dict(self, include_secrets: bool = False) -> dict:
        d = {
            "session": self.session, "kind": self.kind, "fn": self.fn,
            "randomness": self.randomness, "public": self.public,
            "messages": [{"from": m.sender, "to": m.receiver, "label": m.label,
                          "payload": m.payload, "operands": list(m.operands)}
                         for m in self.messages],
            "keys": dict(self.keys), "agreed": self.agreed,
            "observations": self.observations, "attacks": dict(self.attacks),
        }
        if include_secrets:
            d["secrets"] = dict(self.secrets)
        return d


def _combine(f: PartialBinaryFn, env: dict, operands: Sequence[str]) -> Optional[Bits]:
    if len(operands) == 1:
        return env[operands[0]]
    return f.eval(env[operands[0]], env[operands[1]])


class _Session:
    def __init__(self, f, transcript):
        self.f = f
        self.t = transcript
        self.env = {"x": transcript.public, **transcript.secrets}

    def send(self, sender, receiver, label, *operands):
        value = _combine(self.f, self.env, operands)
        if value is None:
            raise ValueError(f"{self.f.descriptor} undefined on {operands}; protocols need a total operation")
        self.env[label] = value
        self.t.messages.append(Message(sender, receiver, label, value, tuple(operands)))

    def key(self, party, *operands):
        value = _combine(self.f, self.env, operands)
        if value is None:
            raise ValueError(f"{self.f.descriptor} undefined on {operands}")
        self.t.keys[party] = value
        self.t.key_operands[party] = tuple(operands)


def run_two_party(f: PartialBinaryFn, x: Bits, y: Bits, z: Bits, session: str = "s0",
                  randomness: str = "explicit") -> Transcript:
    t = Transcript(session, "two-party", f.descriptor, x, {"y": y, "z": z}, randomness=randomness)
    s = _Session(f, t)
    s.send("alice", "bob", "m1", "y", "x")
    s.send("bob", "alice", "m2", "x", "z")
    s.key("alice", "y", "m2")
    s.key("bob", "m1", "z")
    return t


def run_multi_party(f: PartialBinaryFn, x: Bits, secrets: Sequence[Bits], session: str = "s0",
                    randomness: str = "explicit") -> Transcript:
    k = len(secrets)
    if k < 2:
        raise ValueError("multi-party agreement needs at least two parties")
    names = [f"p{i}" for i in range(1, k + 1)]
    sec = {f"s{i}": v for i, v in enumerate(secrets, 1)}
    t = Transcript(session, f"{k}-party", f.descriptor, x, sec, randomness=randomness)
    s = _Session(f, t)
    # up{i}.all = s1.x.s2...si ; up{i}.ex{j} = the same without s_j.
    # Party j keys as s_j.(down.ex{j}), so k=2 is exactly the two-party chain.
    s.send(names[0], names[1], "up1.ex1", "x")
    s.send(names[0], names[1], "up1.all", "s1", "x")
    for i in range(2, k):
        to = names[i]
        for j in range(1, i):
            s.send(names[i - 1], to, f"up{i}.ex{j}", f"up{i-1}.ex{j}", f"s{i}")
        s.send(names[i - 1], to, f"up{i}.ex{i}", f"up{i-1}.all")
        s.send(names[i - 1], to, f"up{i}.all", f"up{i-1}.all", f"s{i}")
    last = names[-1]
    for j in range(1, k):
        s.send(last, "broadcast", f"down.ex{j}", f"up{k-1}.ex{j}", f"s{k}")
    for j in range(1, k):
        s.key(names[j - 1], f"s{j}", f"down.ex{j}")
    s.key(last, f"up{k-1}.all", f"s{k}")
    return t


@dataclass(frozen=True)
class SignatureKeys:
    secret: Bits
    public: tuple[Bits, Bits]

    def consistent(self, f: PartialBinaryFn) -> bool:
        return f.eval(self.public[0], self.secret) == self.public[1]


def keygen(f: PartialBinaryFn, x: Bits, y: Bits) -> SignatureKeys:
    return SignatureKeys(y, (x, f.eval(x, y)))


def sign(f: PartialBinaryFn, m: Bits, keys: SignatureKeys) -> Bits:
    return f.eval(m, keys.secret)


def verify_sig(f: PartialBinaryFn, m: Bits, s: Bits, pub: tuple[Bits, Bits]) -> bool:
    """x.s == m.(x.y): holds for honest s = m.y when the operation is associative and commutative."""
    return f.eval(pub[0], s) == f.eval(m, pub[1])


def eve_combination_attack(f: PartialBinaryFn, t: Transcript) -> tuple[Bits, bool]:
    """Combine the two public messages; succeeds iff that equals the session key."""
    candidate = f.eval(t.message("m1").payload, t.message("m2").payload)
    return candidate, candidate == t.keys["alice"]


def eve_bruteforce_attack(f: PartialBinaryFn, t: Transcript, bound: int,
                          prune: bool = True) -> tuple[Optional[Bits], int]:
    """Search for y' with f(y', x) = m1 among strings of rank < bound."""
    return search_partner(f, t.public, t.message("m1").payload, bound, side="first", prune=prune)


class StringSampler:
    """Uniform-length random strings; the public value is never empty."""

    def __init__(self, max_len: int = 8, public_min_len: int = 1):
        self.max_len = max_len
        self.public_min_len = public_min_len
        self.descriptor = f"strings[<= {max_len}]"

    def draw(self, rng: random.Random, k: int) -> tuple[Bits, list[Bits]]:
        x = random_bits(rng, rng.randint(self.public_min_len, self.max_len))
        return x, [random_bits(rng, rng.randint(0, self.max_len)) for _ in range(k)]


class WitnessFormSampler:
    """Values ``<q, w>`` with w a witness of a shared base q.

    The totalized witness combiner sends every other shape to its trashbin,
    so a session is only meaningful when all values share one base.
    """

    def __init__(self, relation: WitnessRelation, bases: Sequence[Bits]):
        self.relation = relation
        self.bases = [q for q in bases if relation.enumerate_witnesses(q)]
        if not self.bases:
            raise ValueError("no base with witnesses")
        self.descriptor = f"witness-form[{relation.descriptor}, {len(self.bases)} bases]"

    def draw(self, rng: random.Random, k: int) -> tuple[Bits, list[Bits]]:
        q = rng.choice(self.bases)
        wits = self.relation.enumerate_witnesses(q)
        vals = [pair_encode(q, rng.choice(wits)) for _ in range(k + 1)]
        return vals[0], vals[1:]


def session_id(seed: int, label: str, index: int) -> str:
    return f"{label}-{derive_seed(seed, label, index):016x}"


def seeded_two_party(f: PartialBinaryFn, sampler, seed: int, index: int) -> Transcript:
    rng = make_rng(seed, "agree2", index)
    x, (y, z) = sampler.draw(rng, 2)
    return run_two_party(f, x, y, z, session_id(seed, "agree2", index),
                         f"seed={seed} label=agree2/{index} sampler={sampler.descriptor}")


def seeded_multi_party(f: PartialBinaryFn, sampler, seed: int, index: int, k: int) -> Transcript:
    rng = make_rng(seed, "agreek", k, index)
    x, secrets = sampler.draw(rng, k)
    return run_multi_party(f, x, secrets, session_id(seed, f"agree{k}", index),
                           f"seed={seed} label=agreek/{k}/{index} sampler={sampler.descriptor}")


def seeded_signature(f: PartialBinaryFn, sampler, seed: int, index: int):
    """Draw (keys, message, signature) for one seeded signing run."""
    rng = make_rng(seed, "sign", index)
    x, (y, m) = sampler.draw(rng, 2)
    keys = keygen(f, x, y)
    return keys, m, sign(f, m, keys)


def attack_bound(t: Transcript) -> int:
    """Scan bound covering every string no longer than the longest observation."""
    longest = max(len(o) for o in t.observations)
    return rank("1" * longest) + 1
