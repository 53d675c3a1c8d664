"""The witness-combining operations, their totalization and the related reductions.

``build_sigma`` merges two witness-bearing reports for the same input into
the one with the lexicographically smaller witness, and lets an input-only
report ``<x, x>`` absorb a witness report.  ``build_tau`` differs only in
that two witness reports combine solely when the witnesses are identical.
Everything else is a hole in the domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .core import Bits, PartialBinaryFn, is_bits, lex_min, pair_decode, pair_encode, rank, unrank
from .relations import DEFAULT_CAP, WitnessRelation

INPUT = "input"
WITNESS = "witness"


class ConstructionError(ValueError):
    pass


class _WitnessCombiner(PartialBinaryFn):
    name = "combiner"

    def __init__(self, relation: WitnessRelation):
        self.relation = relation
        self.descriptor = f"{self.name}[{relation.descriptor}]"

    def classify(self, s: Bits):
        """Split ``s`` into ``(x, kind)``; kind is INPUT, WITNESS or None."""
        x, tail = pair_decode(s)
        if tail == x:
            return x, INPUT
        if self.relation.verify(x, tail):
            return x, WITNESS
        return x, None

    def pair_hint(self, known, target):
        return pair_decode(known)[0]

    def _merge_witnesses(self, x, w1, w2):
        raise NotImplementedError

    def apply(self, a, b):
        xa, ka = self.classify(a)
        if ka is None:
            return None
        xb, kb = self.classify(b)
        if kb is None or xa != xb:
            return None
        if ka == WITNESS and kb == WITNESS:
            return self._merge_witnesses(xa, pair_decode(a)[1], pair_decode(b)[1])
        if ka != kb:
            return pair_encode(xa, xa)
        return None


class SigmaFn(_WitnessCombiner):
    name = "sigma"

    def _merge_witnesses(self, x, w1, w2):
        return pair_encode(x, lex_min(w1, w2))


class TauFn(_WitnessCombiner):
    name = "tau"

    def _merge_witnesses(self, x, w1, w2):
        return pair_encode(x, w1) if w1 == w2 else None


def build_sigma(r: WitnessRelation) -> SigmaFn:
    return SigmaFn(r)


def build_tau(r: WitnessRelation) -> TauFn:
    return TauFn(r)


class TotalizedFn(PartialBinaryFn):
    """Total extension sending every hole of ``inner`` to a fixed trashbin string."""

    total = True

    def __init__(self, inner: PartialBinaryFn, trashbin: Bits):
        if not is_bits(trashbin):
            raise ConstructionError(f"trashbin is not a bit string: {trashbin!r}")
        if inner.in_domain(trashbin, trashbin):
            raise ConstructionError(
                f"{inner.descriptor} is defined at (trashbin, trashbin) for trashbin={trashbin!r}"
            )
        self.inner = inner
        self.trashbin = trashbin
        self.descriptor = f"{inner.descriptor}~"

    def apply(self, a, b):
        v = self.inner.apply(a, b)
        return self.trashbin if v is None else v

    def pair_hint(self, known, target):
        if target == self.trashbin:
            return None
        return self.inner.pair_hint(known, target)


def totalize(f: PartialBinaryFn, trashbin: Bits) -> TotalizedFn:
    return TotalizedFn(f, trashbin)


def canonical_trashbin(non_member: Bits) -> Bits:
    """``<x, 1x>`` for a non-member x: never in the domain of either combiner."""
    return pair_encode(non_member, "1" + non_member)


def choose_trashbin(f: PartialBinaryFn, candidates: Iterable[Bits] = (), *,
                    non_member: Optional[Bits] = None, avoid: Iterable[Bits] = (),
                    scan: int = 1 << 12) -> Bits:
    """First candidate ``t`` with ``(t, t)`` outside the domain of ``f``.

    Order: ``<non_member, 1 non_member>`` if given, then ``candidates``,
    then the first ``scan`` strings in length-lex order.
    """
    avoid = set(avoid)

    def ordered():
        if non_member is not None:
            yield canonical_trashbin(non_member)
        yield from candidates
        for i in range(scan):
            yield unrank(i)

    for t in ordered():
        if t not in avoid and not f.in_domain(t, t):
            return t
    raise ConstructionError(f"no trashbin for {f.descriptor} among scanned candidates")


def default_trashbin(f: PartialBinaryFn, r: WitnessRelation, avoid: Iterable[Bits] = ()) -> Bits:
    return choose_trashbin(f, non_member=r.find_non_member(), avoid=avoid)


@dataclass(frozen=True)
class CounterexampleTriple:
    x0: Bits
    w1: Bits
    w2: Bits
    a: Bits
    b: Bits
    c: Bits
    trashbin: Bits
    ab: Bits
    left: Bits
    bc: Bits
    right: Bits

    @property
    def chain(self) -> list[tuple[str, Bits]]:
        return [
            ("tau~(a,b)", self.ab),
            ("tau~(tau~(a,b),c)", self.left),
            ("tau~(b,c)", self.bc),
            ("tau~(a,tau~(b,c))", self.right),
        ]

    def to_dict(self) -> dict:
        return {
            "x0": self.x0, "w1": self.w1, "w2": self.w2,
            "a": self.a, "b": self.b, "c": self.c, "trashbin": self.trashbin,
            "chain": [{"step": k, "value": v} for k, v in self.chain],
            "left": self.left, "right": self.right, "equal": self.left == self.right,
        }


def find_ambiguous_input(r: WitnessRelation, scan: int = 1 << 10,
                         cap: int = DEFAULT_CAP) -> Optional[Bits]:
    for i in range(scan):
        x = unrank(i)
        if len(r.enumerate_witnesses(x, cap)) >= 2:
            return x
    return None


def counterexample_triple(r: WitnessRelation, x0: Optional[Bits] = None,
                          trashbin: Optional[Bits] = None, scan: int = 1 << 10) -> CounterexampleTriple:
    """Triple on which the totalized tau is not weakly associative.

    Uses the two smallest witnesses ``w1 < w2`` of ``x0`` (first input in
    length-lex order with two witnesses unless given).
    """
    if x0 is None:
        x0 = find_ambiguous_input(r, scan)
        if x0 is None:
            raise ConstructionError(f"{r.descriptor}: no input with two witnesses in first {scan}")
    wits = r.enumerate_witnesses(x0)
    if len(wits) < 2:
        raise ConstructionError(f"{r.descriptor}: {x0!r} has fewer than two witnesses")
    w1, w2 = wits[0], wits[1]
    tau = build_tau(r)
    a, b, c = pair_encode(x0, w1), pair_encode(x0, w2), pair_encode(x0, x0)
    if trashbin is None:
        trashbin = default_trashbin(tau, r, avoid={c})
    tt = totalize(tau, trashbin)
    ab = tt(a, b)
    left = tt(ab, c)
    bc = tt(b, c)
    right = tt(a, bc)
    if not (left == trashbin and right == c and left != right):
        raise ConstructionError(
            f"trashbin {trashbin!r} does not separate the two groupings at x0={x0!r}"
        )
    return CounterexampleTriple(x0, w1, w2, a, b, c, trashbin, ab, left, bc, right)


def witness_scan_bound(r: WitnessRelation, x: Bits) -> int:
    """One past the largest rank of any ``<x, w>`` with ``|w| = p(|x|)``."""
    return rank(pair_encode(x, "1" * r.witness_length(len(x)))) + 1


def decide_via_inverter(r: WitnessRelation, x: Bits, g: Callable[[Bits], Bits]) -> bool:
    """Decide membership of ``x`` from a first-argument inverter ``g``.

    Query ``g(<<x,x>, <x,x>>)`` and accept iff the answer decodes to
    ``<x, w>`` with ``w`` a witness of ``x``.
    """
    xx = pair_encode(x, x)
    d = g(pair_encode(xx, xx))
    if not is_bits(d):
        return False
    u, w = pair_decode(d)
    return u == x and r.verify(x, w)
