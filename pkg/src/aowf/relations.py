"""Witness relations: a verifier plus a witness-length polynomial.

The language of a relation is ``{x : some w verifies}`` and ``Wit(x)`` is
the set of verifying ``w``.  Every witness of ``x`` has length
``witness_length(len(x))``, which is strictly increasing and strictly larger
than ``len(x)``, so a witness can never be confused with its input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .core import Bits, unrank
from .rng import make_rng

DEFAULT_CAP = 1 << 16
SUBSET_SUM_WIDTH = 8
# Extra target bits over the item width: 16 items of width W sum below 2**(W+4).
TARGET_EXTRA_BITS = 4
MAX_ITEMS = 16


class EnumerationTooLarge(ValueError):
    pass


class GenerationError(RuntimeError):
    pass


class WitnessRelation:
    descriptor = "relation"

    def witness_length(self, n: int) -> int:
        raise NotImplementedError

    def _check(self, x: Bits, w: Bits) -> bool:
        raise NotImplementedError

    def verify(self, x: Bits, w: Bits) -> bool:
        if len(w) != self.witness_length(len(x)):
            return False
        return self._check(x, w)

    def structured_witnesses(self, x: Bits) -> Optional[list[Bits]]:
        """All witnesses of ``x`` if the relation can list them directly, else None."""
        return None

    def enumerate_witnesses(self, x: Bits, cap: int = DEFAULT_CAP) -> tuple[Bits, ...]:
        """Witnesses of ``x`` in lexicographic order, truncated at ``cap``.

        Falls back to trying every string of the witness length, which is
        refused when that space is larger than ``cap``.
        """
        found = self.structured_witnesses(x)
        if found is None:
            p = self.witness_length(len(x))
            if (1 << p) > cap:
                raise EnumerationTooLarge(
                    f"{self.descriptor}: 2**{p} candidate witnesses exceed cap {cap}"
                )
            found = [w for w in (format(i, f"0{p}b") if p else "" for i in range(1 << p))
                     if self._check(x, w)]
        return tuple(sorted(found)[:cap])

    def is_member(self, x: Bits, cap: int = DEFAULT_CAP) -> bool:
        return bool(self.enumerate_witnesses(x, cap))

    def find_non_member(self, max_rank: int = 1 << 12, cap: int = DEFAULT_CAP) -> Optional[Bits]:
        """First string in length-lex order with no witness, if any within ``max_rank``."""
        for i in range(max_rank):
            x = unrank(i)
            try:
                if not self.is_member(x, cap):
                    return x
            except EnumerationTooLarge:
                return None
        return None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor}>"


def check_length_discipline(r: WitnessRelation, up_to: int = 32) -> None:
    prev = None
    for n in range(up_to + 1):
        p = r.witness_length(n)
        if p <= n:
            raise ValueError(f"{r.descriptor}: witness_length({n}) = {p} is not > {n}")
        if prev is not None and p <= prev:
            raise ValueError(f"{r.descriptor}: witness_length is not strictly increasing at {n}")
        prev = p


class MockRelation(WitnessRelation):
    """Wit(x) = {0x, 1x}: every string has exactly two witnesses."""

    descriptor = "mock"

    def witness_length(self, n):
        return n + 1

    def _check(self, x, w):
        return w[1:] == x

    def structured_witnesses(self, x):
        return ["0" + x, "1" + x]


class PredicateRelation(WitnessRelation):
    """Relation given by an arbitrary verifier callable; enumerated by brute force."""

    def __init__(self, check: Callable[[Bits, Bits], bool], witness_length: Callable[[int], int],
                 descriptor: str = "predicate"):
        self._check_fn = check
        self._p = witness_length
        self.descriptor = descriptor
        check_length_discipline(self)

    def witness_length(self, n):
        return self._p(n)

    def _check(self, x, w):
        return bool(self._check_fn(x, w))


@dataclass(frozen=True)
class SubsetSumInstance:
    """Subset-sum instance with its bit encoding.

    Encoding: ``1^W 0``, then each item as a W-bit big-endian field, then
    the target as a (W+4)-bit field.  The item count is implied by the
    total length.
    """

    items: tuple[int, ...]
    target: int
    width: int = SUBSET_SUM_WIDTH

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be positive")
        if not self.items:
            raise ValueError("need at least one item")
        limit = 1 << self.width
        for v in self.items:
            if not 0 < v < limit:
                raise ValueError(f"item {v} not a positive {self.width}-bit integer")
        if not 0 < self.target < (1 << (self.width + TARGET_EXTRA_BITS)):
            raise ValueError(f"target {self.target} out of range")

    @property
    def encoding(self) -> Bits:
        w = self.width
        body = "".join(format(v, f"0{w}b") for v in self.items)
        return "1" * w + "0" + body + format(self.target, f"0{w + TARGET_EXTRA_BITS}b")

    @classmethod
    def decode(cls, x: Bits) -> Optional["SubsetSumInstance"]:
        """Instance encoded by ``x``, or None if ``x`` is not a valid encoding."""
        w = len(x) - len(x.lstrip("1"))
        if w == 0 or len(x) == w:
            return None
        rest = x[w + 1:]
        tw = w + TARGET_EXTRA_BITS
        body = len(rest) - tw
        if body < w or body % w:
            return None
        items = tuple(int(rest[i:i + w], 2) for i in range(0, body, w))
        target = int(rest[body:], 2)
        if target == 0 or 0 in items:
            return None
        return cls(items, target, w)

    def mask_sums(self) -> dict[int, int]:
        """Number of nonempty subsets hitting each sum."""
        counts = {0: 1}
        for v in self.items:
            nxt = dict(counts)
            for s, c in counts.items():
                nxt[s + v] = nxt.get(s + v, 0) + c
            counts = nxt
        counts[0] -= 1
        return {s: c for s, c in counts.items() if c}

    def to_dict(self) -> dict:
        return {"kind": "subset-sum", "width": str(self.width),
                "items": [str(v) for v in self.items], "target": str(self.target),
                "encoding": self.encoding}

    @classmethod
    def from_dict(cls, data) -> "SubsetSumInstance":
        if data.get("kind") != "subset-sum":
            raise ValueError("not a subset-sum instance file")
        inst = cls(tuple(int(v) for v in data["items"]), int(data["target"]), int(data["width"]))
        if "encoding" in data and data["encoding"] != inst.encoding:
            raise ValueError("instance encoding does not match its fields")
        return inst


class SubsetSumRelation(WitnessRelation):
    """x encodes a subset-sum instance; w is a selection mask zero-padded to |x|+1."""

    descriptor = "subset-sum"

    def witness_length(self, n):
        return n + 1

    def _check(self, x, w):
        inst = SubsetSumInstance.decode(x)
        if inst is None:
            return False
        n = len(inst.items)
        if "1" in w[n:]:
            return False
        return sum(v for v, bit in zip(inst.items, w) if bit == "1") == inst.target

    def structured_witnesses(self, x):
        inst = SubsetSumInstance.decode(x)
        if inst is None:
            return []
        n = len(inst.items)
        if n > MAX_ITEMS:
            return None
        pad = "0" * (len(x) + 1 - n)
        out = []
        for m in range(1 << n):
            mask = format(m, f"0{n}b")
            if sum(v for v, bit in zip(inst.items, mask) if bit == "1") == inst.target:
                out.append(mask + pad)
        return out


def gen_subset_sum(seed: int, n_items: int, want_witnesses: int,
                   width: int = SUBSET_SUM_WIDTH, attempts: int = 1000) -> SubsetSumInstance:
    """Seeded instance with at least ``want_witnesses`` witnesses.

    Each attempt draws items from a derived sub-seed and targets the most
    popular subset sum.  The item range halves every 50 failed attempts, so
    dense collisions (down to all-ones items) are eventually tried.
    """
    if not 1 <= n_items <= MAX_ITEMS:
        raise ValueError(f"n_items must be in 1..{MAX_ITEMS}")
    if want_witnesses > (1 << n_items) - 1:
        raise GenerationError(
            f"{n_items} items admit at most {(1 << n_items) - 1} nonempty masks, "
            f"cannot reach {want_witnesses} witnesses"
        )
    for attempt in range(attempts):
        rng = make_rng(seed, "subset-sum", n_items, width, attempt)
        hi = max(1, ((1 << width) - 1) >> (attempt // 50))
        items = tuple(rng.randint(1, hi) for _ in range(n_items))
        probe = SubsetSumInstance(items, 1, width)
        counts = probe.mask_sums()
        best = max(counts.values())
        if best < want_witnesses:
            continue
        target = rng.choice(sorted(s for s, c in counts.items() if c == best))
        return SubsetSumInstance(items, target, width)
    raise GenerationError(
        f"no instance with >= {want_witnesses} witnesses in {attempts} attempts "
        f"(seed {seed}, {n_items} items)"
    )


def relation_from_name(name: str) -> WitnessRelation:
    if name == "mock":
        return MockRelation()
    if name in ("subset-sum", "subsetsum"):
        return SubsetSumRelation()
    raise ValueError(f"unknown relation {name!r}")


__all__ = [
    "WitnessRelation", "MockRelation", "PredicateRelation", "SubsetSumRelation",
    "SubsetSumInstance", "gen_subset_sum", "check_length_discipline",
    "EnumerationTooLarge", "GenerationError", "relation_from_name",
]
