"""Finite-universe property checkers, preimage censuses and brute-force inverters.

Every quantifier over all strings is replaced by an explicit finite
:class:`Universe`, and every report names the universe it was run on.
Operation tables are tabulated once into integer arrays and the cubic
loops run in :mod:`aowf.kernels`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from . import kernels
from .core import (BOTTOM, Bits, PartialBinaryFn, all_strings, cantor_pair, extend_eval,
                   is_bits, length_lex_key, pair_decode, pair_encode, rank, unrank)
from .functions import TableFn
from .relations import WitnessRelation
from .rng import make_rng, random_bits

DEFAULT_MAX_TRIPLES = 50_000_000


class BudgetExceeded(RuntimeError):
    pass


class SearchExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class Universe:
    elements: tuple[Bits, ...]
    provenance: str
    params: tuple = ()

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("universe elements must be distinct")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, s):
        return s in self.elements

    @classmethod
    def exhaustive(cls, max_len: int) -> "Universe":
        return cls(tuple(all_strings(max_len)), "exhaustive", (("max_len", max_len),))

    @classmethod
    def explicit(cls, elements: Iterable[Bits], label: str = "explicit") -> "Universe":
        elems = sorted(set(elements), key=length_lex_key)
        for e in elems:
            if not is_bits(e):
                raise ValueError(f"not a bit string: {e!r}")
        return cls(tuple(elems), label)

    def extended(self, extra: Iterable[Bits], label: str = "extended") -> "Universe":
        elems = sorted(set(self.elements) | set(extra), key=length_lex_key)
        return Universe(tuple(elems), f"{self.provenance}+{label}", self.params)

    def describe(self) -> dict:
        d = {"provenance": self.provenance, "size": str(len(self.elements)),
             "elements": list(self.elements)}
        for k, v in self.params:
            d[k] = str(v)
        return d


def domain_universe(r: WitnessRelation, xs: Sequence[Bits], n_decoys: int = 20,
                    seed: int = 0) -> Universe:
    """``<x,x>`` and every ``<x,w>`` for each x, plus seeded decoys.

    Half the decoys are near misses ``<x, s>`` with ``|s| = p(|x|)`` but
    ``s`` not a witness; the rest are random strings.
    """
    core = []
    for x in xs:
        core.append(pair_encode(x, x))
        core.extend(pair_encode(x, w) for w in r.enumerate_witnesses(x))
    taken = set(core)
    rng = make_rng(seed, "decoys", r.descriptor, *xs)
    longest = max((len(s) for s in core), default=4)
    decoys = []
    tries = 0
    while len(decoys) < n_decoys:
        tries += 1
        if tries > 1000 * (n_decoys + 1):
            raise RuntimeError("could not draw enough distinct decoys")
        if len(decoys) < n_decoys // 2 and xs:
            x = rng.choice(list(xs))
            s = random_bits(rng, r.witness_length(len(x)))
            if r.verify(x, s):
                continue
            d = pair_encode(x, s)
        else:
            d = random_bits(rng, rng.randint(1, longest))
        if d not in taken:
            taken.add(d)
            decoys.append(d)
    elems = sorted(taken, key=length_lex_key)
    return Universe(tuple(elems), "domain-sample",
                    (("relation", r.descriptor), ("inputs", len(xs)), ("decoys", n_decoys),
                     ("seed", seed)))


class Tabulation:
    """Integer tables of ``f`` over a universe, extended by the images it produces.

    ``left[i, c] = f(E_i, U_c)`` and ``right[a, j] = f(U_a, E_j)`` for the
    universe U (indices 0..n-1) and first-stage images (indices n..m-1);
    -1 marks a hole.
    """

    def __init__(self, f: PartialBinaryFn, universe: Universe, second_stage: bool = True):
        self.f = f
        self.universe = universe
        self.elements: list[Bits] = list(universe.elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self._memo: dict[tuple[Bits, Bits], Optional[Bits]] = {}
        n = len(self.elements)
        self.n = n
        self.table = np.full((n, n), -1, dtype=np.int64)
        for i, a in enumerate(universe.elements):
            for j, b in enumerate(universe.elements):
                self.table[i, j] = self._idx(self.eval(a, b))
        if not second_stage:
            return
        m = len(self.elements)
        self.m = m
        self.left = np.full((m, n), -1, dtype=np.int64)
        self.right = np.full((n, m), -1, dtype=np.int64)
        self.left[:n] = self.table
        self.right[:, :n] = self.table
        for i in range(n, m):
            e = self.elements[i]
            for c, u in enumerate(universe.elements):
                self.left[i, c] = self._idx(self.eval(e, u))
                self.right[c, i] = self._idx(self.eval(u, e))

    def eval(self, a, b):
        key = (a, b)
        if key not in self._memo:
            self._memo[key] = self.f.eval(a, b)
        return self._memo[key]

    def _idx(self, v):
        if v is None:
            return -1
        i = self.index.get(v)
        if i is None:
            i = len(self.elements)
            self.elements.append(v)
            self.index[v] = i
        return i


@dataclass
class Violation:
    inputs: tuple
    chains: dict

    def to_dict(self) -> dict:
        return {"inputs": list(self.inputs),
                "chains": {k: _ser(v) for k, v in sorted(self.chains.items())}}


def _ser(v):
    if v is BOTTOM or v is None:
        return None
    if isinstance(v, (list, tuple)):
        return [_ser(x) for x in v]
    return v


@dataclass
class PropertyReport:
    property: str
    fn: str
    universe: Universe
    checked: int
    violations: list[Violation]
    violation_count: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.violation_count:
            self.violation_count = len(self.violations)

    @property
    def verdict(self) -> str:
        return "pass" if not self.violations else "fail"

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        d = {
            "property": self.property, "fn": self.fn, "universe": self.universe.describe(),
            "checked": str(self.checked), "violation_count": str(self.violation_count),
            "violations": [v.to_dict() for v in self.violations], "verdict": self.verdict,
        }
        for k, v in self.extra.items():
            d[k] = str(v) if isinstance(v, int) else v
        return d


def _budget(n: int, power: int, max_work: int, limit: int = -1):
    if limit == 0 or limit < -1:
        raise ValueError("limit must be -1 (no limit) or positive")
    if n ** power > max_work:
        raise BudgetExceeded(f"{n}**{power} evaluations exceed budget {max_work}")


def _triple_violation(f, a, b, c) -> Violation:
    ab = extend_eval(f, a, b)
    bc = extend_eval(f, b, c)
    return Violation((a, b, c), {
        "left": (ab, extend_eval(f, ab, c)),
        "right": (bc, extend_eval(f, a, bc)),
    })


def check_associative(f: PartialBinaryFn, u: Universe, max_triples: int = DEFAULT_MAX_TRIPLES,
                      limit: int = -1) -> PropertyReport:
    """(a^b)^c == a^(b^c) over all triples of ``u`` for the bottom-extension of ``f``."""
    n = len(u)
    _budget(n, 3, max_triples, limit)
    tab = Tabulation(f, u)
    count, found = kernels.assoc_violations(tab.left, tab.right, limit)
    el = u.elements
    viols = [_triple_violation(f, el[a], el[b], el[c]) for a, b, c in found]
    return PropertyReport("associative", f.descriptor, u, n ** 3, viols, count)


def check_weakly_associative(f: PartialBinaryFn, u: Universe,
                             max_triples: int = DEFAULT_MAX_TRIPLES,
                             limit: int = -1) -> PropertyReport:
    """Associativity only on triples where (a,b), (b,c), (a,bc), (ab,c) are all defined."""
    n = len(u)
    _budget(n, 3, max_triples, limit)
    tab = Tabulation(f, u)
    count, considered, found = kernels.weak_assoc_violations(tab.left, tab.right, limit)
    el = u.elements
    viols = [_triple_violation(f, el[a], el[b], el[c]) for a, b, c in found]
    return PropertyReport("weakly-associative", f.descriptor, u, n ** 3, viols, count,
                          {"applicable": considered})


def check_commutative(f: PartialBinaryFn, u: Universe, max_pairs: int = DEFAULT_MAX_TRIPLES,
                      limit: int = -1) -> PropertyReport:
    n = len(u)
    _budget(n, 2, max_pairs, limit)
    tab = Tabulation(f, u, second_stage=False)
    count, found = kernels.comm_violations(tab.table, limit)
    el = u.elements
    viols = [Violation((el[a], el[b]), {"ab": extend_eval(f, el[a], el[b]),
                                         "ba": extend_eval(f, el[b], el[a])})
             for a, b in found]
    return PropertyReport("commutative", f.descriptor, u, n * n, viols, count)


def check_total(f: PartialBinaryFn, u: Universe, max_pairs: int = DEFAULT_MAX_TRIPLES,
                limit: int = -1) -> PropertyReport:
    n = len(u)
    _budget(n, 2, max_pairs, limit)
    tab = Tabulation(f, u, second_stage=False)
    holes = np.argwhere(tab.table < 0)
    el = u.elements
    shown = holes if limit < 0 else holes[:limit]
    viols = [Violation((el[a], el[b]), {"value": None}) for a, b in shown.tolist()]
    return PropertyReport("total", f.descriptor, u, n * n, viols, len(holes))


@dataclass(frozen=True)
class HonestyPolynomial:
    """p(n) = sum(coefficients[i] * n**i)."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coefficients):
            raise ValueError("honesty polynomial coefficients must be nonnegative")

    def __call__(self, n: int) -> int:
        return sum(c * n ** i for i, c in enumerate(self.coefficients))


def check_honest(f: PartialBinaryFn, u: Universe, p: HonestyPolynomial,
                 max_pairs: int = DEFAULT_MAX_TRIPLES) -> PropertyReport:
    """Each image over ``u`` has a preimage in ``u`` with |a|+|b| <= p(|image|)."""
    _budget(len(u), 2, max_pairs)
    shortest: dict[Bits, tuple[int, tuple[Bits, Bits]]] = {}
    for a in u:
        for b in u:
            c = f.eval(a, b)
            if c is None:
                continue
            size = len(a) + len(b)
            if c not in shortest or size < shortest[c][0]:
                shortest[c] = (size, (a, b))
    viols = []
    for c in sorted(shortest, key=length_lex_key):
        size, pair = shortest[c]
        if size > p(len(c)):
            viols.append(Violation((c,), {"shortest_preimage": pair,
                                          "size": size, "bound": p(len(c))}))
    return PropertyReport("honest", f.descriptor, u, len(shortest), viols,
                          extra={"polynomial": [str(c) for c in p.coefficients]})


def check_unordered_injective(f: PartialBinaryFn, u: Universe,
                              max_pairs: int = DEFAULT_MAX_TRIPLES) -> PropertyReport:
    """Equal images must come from equal unordered argument sets."""
    _budget(len(u), 2, max_pairs)
    first: dict[Bits, tuple[Bits, Bits]] = {}
    reported = set()
    viols = []
    checked = 0
    for a in u:
        for b in u:
            c = f.eval(a, b)
            if c is None:
                continue
            checked += 1
            if c not in first:
                first[c] = (a, b)
            elif {a, b} != set(first[c]) and c not in reported:
                reported.add(c)
                viols.append(Violation((first[c], (a, b)), {"image": c}))
    return PropertyReport("unordered-injective", f.descriptor, u, checked, viols)


def replay(report: PropertyReport, f: PartialBinaryFn) -> bool:
    """Re-evaluate every listed violation; True iff each is a genuine failure."""
    for v in report.violations:
        if report.property in ("associative", "weakly-associative"):
            fresh = _triple_violation(f, *v.inputs)
            (ab, lhs), (bc, rhs) = fresh.chains["left"], fresh.chains["right"]
            if fresh.chains != v.chains or lhs == rhs:
                return False
            if report.property == "weakly-associative" and BOTTOM in (ab, bc, lhs, rhs):
                return False
        elif report.property == "commutative":
            a, b = v.inputs
            if extend_eval(f, a, b) == extend_eval(f, b, a):
                return False
        elif report.property == "total":
            if f.in_domain(*v.inputs):
                return False
        elif report.property == "honest":
            (c,) = v.inputs
            bound = v.chains["bound"]
            if any(f.eval(a, b) == c and len(a) + len(b) <= bound
                   for a in report.universe for b in report.universe):
                return False
        elif report.property == "unordered-injective":
            (p1, p2) = v.inputs
            if f.eval(*p1) != f.eval(*p2) or f.eval(*p1) is None or set(p1) == set(p2):
                return False
        else:
            raise ValueError(f"unknown property {report.property!r}")
    return True


@dataclass
class AmbiguityProfile:
    fn: str
    universe: Universe
    preimages: dict  # image -> list of (a, b), in universe order

    @property
    def counts(self) -> dict[Bits, int]:
        return {z: len(p) for z, p in self.preimages.items()}

    @property
    def by_length(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for z, p in self.preimages.items():
            out[len(z)] = max(out.get(len(z), 0), len(p))
        return dict(sorted(out.items()))

    @property
    def max_image(self) -> Optional[Bits]:
        if not self.preimages:
            return None
        best = max(len(p) for p in self.preimages.values())
        return min((z for z, p in self.preimages.items() if len(p) == best), key=length_lex_key)

    @property
    def max_count(self) -> int:
        z = self.max_image
        return 0 if z is None else len(self.preimages[z])

    def left_set(self, w: Bits) -> list[Bits]:
        """Arguments x != w with f(x, y) = w for some y in the universe."""
        return sorted({a for a, _ in self.preimages.get(w, ()) if a != w}, key=length_lex_key)

    def right_set(self, w: Bits) -> list[Bits]:
        return sorted({b for _, b in self.preimages.get(w, ()) if b != w}, key=length_lex_key)

    def to_dict(self) -> dict:
        z = self.max_image
        return {
            "fn": self.fn, "universe": self.universe.describe(),
            "counts": {k: str(v) for k, v in sorted(self.counts.items(),
                                                  key=lambda kv: length_lex_key(kv[0]))},
            "max_by_length": {str(k): str(v) for k, v in self.by_length.items()},
            "max": None if z is None else {
                "image": z, "count": str(self.max_count),
                "preimage": [list(p) for p in self.preimages[z]],
                "left_set": self.left_set(z), "right_set": self.right_set(z),
            },
        }


def preimage_census(f: PartialBinaryFn, u: Universe,
                    max_pairs: int = DEFAULT_MAX_TRIPLES) -> AmbiguityProfile:
    _budget(len(u), 2, max_pairs)
    pre: dict[Bits, list] = {}
    for a in u:
        for b in u:
            c = f.eval(a, b)
            if c is not None:
                pre.setdefault(c, []).append((a, b))
    ordered = {z: pre[z] for z in sorted(pre, key=length_lex_key)}
    return AmbiguityProfile(f.descriptor, u, ordered)


@dataclass
class HomanResult:
    z: Bits
    preimage: list
    universe: Universe
    left_set: list
    right_set: list
    n: int

    def verify(self, f: PartialBinaryFn) -> bool:
        pairs = [tuple(p) for p in self.preimage]
        return (len(set(pairs)) == len(pairs) >= self.n
                and all(f.eval(a, b) == self.z for a, b in pairs))

    def to_dict(self) -> dict:
        return {"n": str(self.n), "z": self.z, "count": str(len(self.preimage)),
                "preimage": [list(p) for p in self.preimage],
                "left_set": self.left_set, "right_set": self.right_set,
                "universe": self.universe.describe()}


def homan_search(f: PartialBinaryFn, n: int, schedule: Optional[Iterable[Universe]] = None,
                 max_len: int = 10, budget_ms: Optional[int] = None) -> HomanResult:
    """Grow the universe until some image has at least ``n`` preimages.

    The default schedule is the exhaustive universes of length 0..max_len.
    For total associative ``f`` such an image always exists on a large
    enough universe; for other ``f`` the search may exhaust its schedule.
    """
    if schedule is None:
        schedule = (Universe.exhaustive(k) for k in range(max_len + 1))
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000
    for u in schedule:
        if deadline is not None and time.monotonic() > deadline:
            raise SearchExhausted(f"time budget of {budget_ms} ms exhausted")
        profile = preimage_census(f, u)
        defined = sum(len(p) for p in profile.preimages.values())
        if defined != len(u) ** 2:
            raise ValueError(f"{f.descriptor} is not total on universe of size {len(u)}")
        hits = [z for z, p in profile.preimages.items() if len(p) >= n]
        if hits:
            z = min(hits, key=length_lex_key)
            return HomanResult(z, list(profile.preimages[z]), u,
                               profile.left_set(z), profile.right_set(z), n)
    raise SearchExhausted(f"no image with {n} preimages for {f.descriptor} within schedule")


@dataclass(frozen=True)
class Collision:
    first: tuple[Bits, Bits]
    second: tuple[Bits, Bits]
    value: Bits

    def verify(self, f: PartialBinaryFn) -> bool:
        return (self.first != self.second
                and f.eval(*self.first) == self.value == f.eval(*self.second))


def pigeonhole_injectivity(f: PartialBinaryFn, u: Universe) -> Collision:
    """Two distinct pairs with the same image; ``f`` must be closed and total on ``u``."""
    if len(u) < 2:
        raise ValueError("need a universe of at least two elements")
    tab = Tabulation(f, u, second_stage=False)
    if (tab.table < 0).any():
        raise ValueError(f"{f.descriptor} is not total on the universe")
    if len(tab.elements) > len(u):
        raise ValueError(f"{f.descriptor} is not closed on the universe")
    hit = kernels.first_collision(tab.table)
    if hit is None:  # impossible: n*n cells, n values
        raise AssertionError("pigeonhole violated")
    (i, j), (k, l) = hit
    el = u.elements
    return Collision((el[i], el[j]), (el[k], el[l]), el[int(tab.table[i, j])])


def random_magma(seed: int, size: int) -> TableFn:
    """Seeded total closed operation table on the first ``size`` strings."""
    elems = [unrank(i) for i in range(size)]
    rng = make_rng(seed, "magma", size)
    table = [[rng.choice(elems) for _ in elems] for _ in elems]
    return TableFn(elems, table, descriptor=f"magma[{size},{seed}]")


def ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


def eval_homan_bound(m: int, x: int) -> int:
    """ceil(2 log2 x) ** (m ** ceil(log2 x)), exactly."""
    if m < 1 or x < 2:
        raise ValueError("need m >= 1 and x >= 2")
    base = ceil_log2(x * x)  # ceil(2 log2 x) == ceil(log2 x^2)
    return base ** (m ** ceil_log2(x))


def search_partner(f: PartialBinaryFn, known: Bits, c: Bits, bound: int, side: str = "second",
                   prune: bool = True) -> tuple[Optional[Bits], int]:
    """Length-lex scan for p with f(known, p) = c (side="second") or f(p, known) = c.

    Candidates are strings of rank below ``bound``.  When ``f`` reports a
    pair hint only the candidates decoding to that first component are
    evaluated; the others lie outside the domain and can never match.
    Returns ``(partner or None, number of evaluations)``.
    """
    hint = f.pair_hint(known, c) if prune else None
    if hint is None:
        candidates = (unrank(i) for i in range(bound))
    else:
        rh = rank(hint)

        def candidates():
            rs = 0
            while True:
                k = cantor_pair(rh, rs)
                if k >= bound:
                    return
                yield unrank(k)
                rs += 1

        candidates = candidates()
    probes = 0
    for p in candidates:
        probes += 1
        v = f.eval(known, p) if side == "second" else f.eval(p, known)
        if v == c:
            return p, probes
    return None, probes


def brute_force_invert_first(f: PartialBinaryFn, a: Bits, c: Bits, bound: int,
                             prune: bool = True) -> Optional[Bits]:
    """Some b with f(a, b) = c among strings of rank < bound, or None."""
    return search_partner(f, a, c, bound, "second", prune)[0]


def brute_force_invert_second(f: PartialBinaryFn, b: Bits, c: Bits, bound: int,
                              prune: bool = True) -> Optional[Bits]:
    """Some a with f(a, b) = c among strings of rank < bound, or None."""
    return search_partner(f, b, c, bound, "first", prune)[0]


def first_argument_inverter(f: PartialBinaryFn,
                            bound: Union[int, Callable[[Bits, Bits], int]],
                            prune: bool = True) -> Callable[[Bits], Bits]:
    """Wrap the brute-force search as g(<a, c>) -> b; answers eps when nothing is found."""

    def g(q: Bits) -> Bits:
        a, c = pair_decode(q)
        lim = bound(a, c) if callable(bound) else bound
        found = brute_force_invert_first(f, a, c, lim, prune)
        return "" if found is None else found

    return g
