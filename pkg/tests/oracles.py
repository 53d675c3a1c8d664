"""Independent brute-force oracles.  Nothing here uses the package's codecs or kernels."""

from collections import Counter
from itertools import product

BOT = object()


def length_lex_strings(max_len):
    out = []
    for n in range(max_len + 1):
        out.extend("".join(t) for t in product("01", repeat=n))
    return out


def cantor_by_walking(m, n):
    """Cantor index found by walking the anti-diagonals one cell at a time."""
    k = 0
    d = 0
    while True:
        for j in range(d + 1):
            if (d - j, j) == (m, n):
                return k
            k += 1
        d += 1


def hat(f, a, b):
    if a is BOT or b is BOT:
        return BOT
    v = f(a, b)
    return BOT if v is None else v


def assoc_violations(f, universe):
    bad = []
    for a in universe:
        for b in universe:
            for c in universe:
                if hat(f, hat(f, a, b), c) != hat(f, a, hat(f, b, c)):
                    bad.append((a, b, c))
    return bad


def weak_assoc_violations(f, universe):
    bad = []
    for a in universe:
        for b in universe:
            for c in universe:
                ab, bc = f(a, b), f(b, c)
                if ab is None or bc is None:
                    continue
                lhs, rhs = f(ab, c), f(a, bc)
                if lhs is None or rhs is None:
                    continue
                if lhs != rhs:
                    bad.append((a, b, c))
    return bad


def comm_violations(f, universe):
    return [(a, b) for i, a in enumerate(universe) for b in universe[i + 1:]
            if hat(f, a, b) != hat(f, b, a)]


def preimage_counts(f, universe):
    return Counter(v for a in universe for b in universe if (v := f(a, b)) is not None)


def sigma_rules(verify, decode, encode):
    """The witness-min combiner written straight from its case definition."""

    def f(a, b):
        (x1, s1), (x2, s2) = decode(a), decode(b)
        if x1 != x2:
            return None
        x = x1
        wa, wb = verify(x, s1), verify(x, s2)
        if wa and wb:
            return encode(x, min(s1, s2))
        if (s1 == x and wb) or (wa and s2 == x):
            return encode(x, x)
        return None

    return f
