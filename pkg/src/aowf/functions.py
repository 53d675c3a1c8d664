"""Reference 2-ary operations used as baselines and test subjects."""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Optional, Sequence

from .core import Bits, PartialBinaryFn, is_bits, length_lex_key


class Concatenation(PartialBinaryFn):
    descriptor = "concat"
    total = True

    def apply(self, a, b):
        return a + b


class LengthLexMax(PartialBinaryFn):
    descriptor = "lexmax"
    total = True

    def apply(self, a, b):
        return max(a, b, key=length_lex_key)


class EqualLengthLexMin(PartialBinaryFn):
    """min(a, b) on equal-length arguments; undefined otherwise."""

    descriptor = "eqlen-lexmin"

    def apply(self, a, b):
        if len(a) != len(b):
            return None
        return min(a, b)


class CallableFn(PartialBinaryFn):
    """Wrap a plain Python callable, optionally restricted to an explicit domain."""

    def __init__(self, fn: Callable[[Bits, Bits], Optional[Bits]], descriptor: str,
                 domain: Optional[Iterable[tuple[Bits, Bits]]] = None, total: bool = False):
        self._fn = fn
        self.descriptor = descriptor
        self._domain = None if domain is None else frozenset(domain)
        self.total = total and self._domain is None

    def apply(self, a, b):
        if self._domain is not None and (a, b) not in self._domain:
            return None
        return self._fn(a, b)


class TableFn(PartialBinaryFn):
    """Finite operation table over an explicit element list.

    ``table[i][j]`` is the value at ``(elements[i], elements[j])`` or
    ``None`` for a hole.  Pairs outside the element list are undefined.
    """

    def __init__(self, elements: Sequence[Bits], table: Sequence[Sequence[Optional[Bits]]],
                 descriptor: str = "table"):
        if len(set(elements)) != len(elements):
            raise ValueError("table elements must be distinct")
        if len(table) != len(elements) or any(len(row) != len(elements) for row in table):
            raise ValueError("table must be square over its elements")
        for e in elements:
            if not is_bits(e):
                raise ValueError(f"table element is not a bit string: {e!r}")
        for row in table:
            for v in row:
                if v is not None and not is_bits(v):
                    raise ValueError(f"table value is not a bit string: {v!r}")
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.table = tuple(tuple(row) for row in table)
        self.descriptor = descriptor
        self.total = all(v is not None for row in self.table for v in row)

    def apply(self, a, b):
        i = self._index.get(a)
        j = self._index.get(b)
        if i is None or j is None:
            return None
        return self.table[i][j]

    def to_dict(self) -> dict:
        return {"kind": "table", "elements": list(self.elements),
                "table": [list(row) for row in self.table]}

    @classmethod
    def from_dict(cls, data: Mapping, descriptor: str = "table") -> "TableFn":
        return cls(data["elements"], data["table"], descriptor=descriptor)
