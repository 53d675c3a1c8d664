"""Seed derivation.

Every random choice in the package comes from one integer seed.  A labelled
child seed is the first 8 bytes (big-endian) of BLAKE2b over the parent seed
and the label path, so each consumer gets an independent 64-bit seed that
does not depend on how many draws other consumers made.  The stream itself
is the standard library Mersenne Twister seeded with that 64-bit value.
"""

from __future__ import annotations

import hashlib
import random

MASK64 = (1 << 64) - 1


def derive_seed(seed: int, *labels) -> int:
    h = hashlib.blake2b(digest_size=8)
    h.update(str(int(seed) & MASK64).encode())
    for label in labels:
        h.update(b"/")
        h.update(str(label).encode())
    return int.from_bytes(h.digest(), "big")


def make_rng(seed: int, *labels) -> random.Random:
    return random.Random(derive_seed(seed, *labels))


def random_bits(rng: random.Random, length: int) -> str:
    if length == 0:
        return ""
    return format(rng.getrandbits(length), f"0{length}b")
