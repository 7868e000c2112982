"""Finite multisets with exact integer counts.

Markings, transition pre/post sets, chi images and the objects of the
collective-token execution categories are all values of :class:`Multiset`.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping


class UndefinedDifference(ValueError):
    """Raised when ``a - b`` is asked for but ``b`` is not contained in ``a``."""


class MultisetParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


class Multiset:
    """Immutable multiset over hashable, orderable symbols (usually ``str``).

    Zero counts are dropped on construction, so structural equality is
    multiset equality. Iteration is in sorted symbol order.
    """

    __slots__ = ("_items", "_hash", "_map")

    def __init__(self, entries: Mapping | Iterable | None = None):
        counts: dict = {}
        if entries is None:
            pass
        elif isinstance(entries, Multiset):
            counts = dict(entries._items)
        elif isinstance(entries, (dict, Mapping)):
            for k, v in entries.items():
                if not isinstance(v, int) or v < 0:
                    raise ValueError(f"count for {k!r} must be a non-negative int, got {v!r}")
                if v:
                    counts[k] = counts.get(k, 0) + v
        else:
            for k in entries:
                counts[k] = counts.get(k, 0) + 1
        self._items = tuple(sorted(counts.items()))
        self._hash = None
        self._map = None

    @classmethod
    def _of_counts(cls, counts: dict) -> "Multiset":
        """Trusted constructor: counts are ints, zeros are dropped."""
        m = cls.__new__(cls)
        m._items = tuple(sorted((k, v) for k, v in counts.items() if v))
        m._hash = None
        m._map = None
        return m

    @classmethod
    def of(cls, *symbols) -> "Multiset":
        return cls(symbols)

    # mapping-ish access
    def __getitem__(self, sym) -> int:
        if self._map is None:
            self._map = dict(self._items)
        return self._map.get(sym, 0)

    def get(self, sym, default: int = 0) -> int:
        return self[sym] or default

    def items(self):
        return self._items

    def keys(self):
        return tuple(k for k, _ in self._items)

    def support(self) -> frozenset:
        return frozenset(k for k, _ in self._items)

    def __iter__(self) -> Iterator:
        return iter(self.keys())

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def size(self) -> int:
        """Total number of elements counted with multiplicity."""
        return sum(v for _, v in self._items)

    def elements(self) -> tuple:
        """Sorted expansion, each symbol repeated by its count."""
        return tuple(k for k, v in self._items for _ in range(v))

    def as_dict(self) -> dict:
        return dict(self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, Multiset):
            return self._items == other._items
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._items)
        return self._hash

    def __lt__(self, other: "Multiset") -> bool:
        # total order used only for deterministic sorting
        return (self.size(), self._items) < (other.size(), other._items)

    def __le__(self, other: "Multiset") -> bool:
        return mleq(self, other)

    def __add__(self, other: "Multiset") -> "Multiset":
        return msum(self, other)

    def __sub__(self, other: "Multiset") -> "Multiset":
        return mdiff(self, other)

    def scale(self, k: int) -> "Multiset":
        return Multiset({s: c * k for s, c in self._items})

    def map(self, f) -> "Multiset":
        """Image under a symbol renaming ``f`` (counts add up on collisions)."""
        out: dict = {}
        for s, c in self._items:
            t = f(s)
            out[t] = out.get(t, 0) + c
        return Multiset(out)

    def __repr__(self) -> str:
        return f"Multiset({format_multiset(self)})"

    def __str__(self) -> str:
        return format_multiset(self)


EMPTY = Multiset()


def msum(a: Multiset, b: Multiset) -> Multiset:
    out = dict(a.items())
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return Multiset._of_counts(out)


def mleq(a: Multiset, b: Multiset) -> bool:
    for k, v in a.items():
        if b[k] < v:
            return False
    return True


def mdiff(a: Multiset, b: Multiset) -> Multiset:
    """``a - b``; raises :class:`UndefinedDifference` unless ``b <= a``."""
    out = dict(a.items())
    for k, v in b.items():
        have = out.get(k, 0)
        if have < v:
            raise UndefinedDifference(f"{b} is not contained in {a}")
        out[k] = have - v
    return Multiset._of_counts(out)


def mtry_diff(a: Multiset, b: Multiset) -> Multiset | None:
    try:
        return mdiff(a, b)
    except UndefinedDifference:
        return None


def format_multiset(m: Multiset) -> str:
    return "{" + ", ".join(f"{k}:{v}" for k, v in m.items()) + "}"


_TOKEN = re.compile(r"\s*([^\s:,{}]+)\s*(?::\s*(\d+))?\s*")


def parse_multiset(text: str) -> Multiset:
    """Parse ``{a:1, b:2}``. A bare symbol means count 1; ``{}`` is empty."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise MultisetParseError("expected '{...}'", text, 0)
    body_start = text.index("{") + 1
    body = text[body_start:text.rindex("}")]
    counts: dict = {}
    pos = 0
    if body.strip() == "":
        return EMPTY
    while pos <= len(body):
        m = _TOKEN.match(body, pos)
        if not m or not m.group(1):
            raise MultisetParseError("expected 'symbol[:count]'", text, body_start + pos)
        sym, cnt = m.group(1), int(m.group(2) or 1)
        counts[sym] = counts.get(sym, 0) + cnt
        pos = m.end()
        if pos == len(body):
            break
        if body[pos] != ",":
            raise MultisetParseError("expected ','", text, body_start + pos)
        pos += 1
    return Multiset(counts)
