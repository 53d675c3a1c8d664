"""Bit-string carrier, pairing codec and partial 2-ary functions.

Bits are plain ``str`` values over ``"0"``/``"1"``; the empty string is
epsilon.  The pairing is length-lex ranking composed with the Cantor
pairing on naturals, so it is a bijection and every string decodes.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt
from typing import Optional

Bits = str


class _Bottom:
    """The adjoined undefined element; compares unequal to every string."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()


def is_bits(s) -> bool:
    return isinstance(s, str) and s.strip("01") == ""


def length_lex_key(s: Bits) -> tuple[int, Bits]:
    return (len(s), s)


def rank(s: Bits) -> int:
    """Position of ``s`` in the length-lex enumeration eps, 0, 1, 00, ..."""
    if not is_bits(s):
        raise ValueError(f"not a bit string: {s!r}")
    return (1 << len(s)) - 1 + (int(s, 2) if s else 0)


def unrank(n: int) -> Bits:
    if n < 0:
        raise ValueError("rank must be nonnegative")
    length = (n + 1).bit_length() - 1
    if length == 0:
        return ""
    return format(n + 1 - (1 << length), f"0{length}b")


def cantor_pair(m: int, n: int) -> int:
    d = m + n
    return d * (d + 1) // 2 + n


def cantor_unpair(k: int) -> tuple[int, int]:
    d = (isqrt(8 * k + 1) - 1) // 2
    n = k - d * (d + 1) // 2
    return d - n, n


def pair_encode(u: Bits, v: Bits) -> Bits:
    return unrank(cantor_pair(rank(u), rank(v)))


@lru_cache(maxsize=1 << 16)
def pair_decode(s: Bits) -> tuple[Bits, Bits]:
    m, n = cantor_unpair(rank(s))
    return unrank(m), unrank(n)


def lex_min(w1: Bits, w2: Bits) -> Bits:
    """Lexicographically smaller of two equal-length strings (``w1`` on ties)."""
    if len(w1) != len(w2):
        raise ValueError(
            f"lex_min needs equal-length witnesses, got lengths {len(w1)} and {len(w2)}"
        )
    return w2 if w2 < w1 else w1


def all_strings(max_len: int) -> list[Bits]:
    """Every bit string of length <= max_len, in length-lex order."""
    return [unrank(i) for i in range((1 << (max_len + 1)) - 1)]


class PartialBinaryFn:
    """A 2-ary partial function on bit strings.

    Subclasses implement :meth:`apply`, returning ``None`` outside the
    domain.  ``eval`` and ``in_domain`` are derived from it so they can
    never disagree.
    """

    descriptor = "partial-fn"
    total = False

    def apply(self, a: Bits, b: Bits) -> Optional[Bits]:
        raise NotImplementedError

    def eval(self, a: Bits, b: Bits) -> Optional[Bits]:
        return self.apply(a, b)

    def in_domain(self, a: Bits, b: Bits) -> bool:
        return self.apply(a, b) is not None

    def __call__(self, a: Bits, b: Bits) -> Optional[Bits]:
        return self.apply(a, b)

    def pair_hint(self, known: Bits, target: Bits) -> Optional[Bits]:
        # If not None: every partner p with f(known, p) == target (or
        # f(p, known) == target) decodes to a pair whose first component
        # is the returned string.  Lets brute-force inverters skip
        # candidates that can never be in the domain.
        return None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor}>"


def extend_eval(f: PartialBinaryFn, a, b):
    """Evaluate the bottom-extension of ``f``: bottom absorbs, holes map to bottom."""
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    value = f.eval(a, b)
    return BOTTOM if value is None else value
