"""Executions in the collective-token philosophy.

A morphism of the free commutative strict monoidal category on a net is
stored as its domain marking together with a firing sequence. Two valid
sequences from the same marking denote the same morphism iff one can be
turned into the other by repeatedly exchanging adjacent firings whenever the
exchanged sequence is still valid. Every morphism keeps the lexicographically
least member of its class (``seq``), so equality and hashing are structural.

``layers`` is the greedy earliest-layer schedule of ``seq``: a readable
step semantics of the execution. It is derived from ``seq`` and is not
itself used for equality, since equal classes can have different greedy
schedules when one token is used by several firings in turn.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .multiset import EMPTY, Multiset, mdiff, mleq, msum
from .net import PetriNet

MAX_CLASS_SIZE = 200_000


class InvalidSequence(ValueError):
    pass


class CodDomMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FiringSequence:
    start: Multiset
    steps: tuple = ()


def replay(net: PetriNet, dom: Multiset, seq: Iterable[str]) -> list | None:
    """Markings visited by ``seq`` from ``dom``, or None if some step is disabled."""
    m = dom
    trace = [m]
    for u in seq:
        t = net.transition(u)
        if not mleq(t.pre, m):
            return None
        m = msum(mdiff(m, t.pre), t.post)
        trace.append(m)
    return trace


def _swap_neighbours(net: PetriNet, seq: tuple, trace: list):
    for i in range(len(seq) - 1):
        u, v = seq[i], seq[i + 1]
        if u == v:
            continue
        m = trace[i]
        pv = net.pre(v)
        if not mleq(pv, m):
            continue
        m1 = msum(mdiff(m, pv), net.post(v))
        if not mleq(net.pre(u), m1):
            continue
        yield seq[:i] + (v, u) + seq[i + 2:]


@lru_cache(maxsize=65536)
def swap_class(net: PetriNet, dom: Multiset, seq: tuple) -> frozenset:
    """All valid sequences reachable from ``seq`` by valid adjacent exchanges."""
    if replay(net, dom, seq) is None:
        raise InvalidSequence(f"{list(seq)} is not firable from {dom}")
    seen = {seq}
    todo = [seq]
    while todo:
        s = todo.pop()
        for s2 in _swap_neighbours(net, s, replay(net, dom, s)):
            if s2 not in seen:
                seen.add(s2)
                if len(seen) > MAX_CLASS_SIZE:
                    raise MemoryError("swap class too large for explicit canonicalization")
                todo.append(s2)
    return frozenset(seen)


def canonical_sequence(net: PetriNet, dom: Multiset, seq: tuple) -> tuple:
    return min(swap_class(net, dom, tuple(seq)))


def greedy_layers(net: PetriNet, dom: Multiset, seq: Iterable[str]) -> tuple:
    """Place each firing, left to right, in the earliest layer that keeps the
    layered replay valid; a layer fires all its occurrences at once."""
    layers: list = []
    for u in seq:
        for i in range(len(layers) + 1):
            cand = [dict(l) for l in layers]
            if i == len(cand):
                cand.append({})
            cand[i][u] = cand[i].get(u, 0) + 1
            cand_ms = [Multiset(l) for l in cand]
            if _layers_valid(net, dom, cand_ms):
                layers = cand
                break
    return tuple(Multiset(l) for l in layers)


def _layers_valid(net: PetriNet, dom: Multiset, layers) -> bool:
    m = dom
    for layer in layers:
        need, give = EMPTY, EMPTY
        for u, k in layer.items():
            need = msum(need, net.pre(u).scale(k))
            give = msum(give, net.post(u).scale(k))
        if not mleq(need, m):
            return False
        m = msum(mdiff(m, need), give)
    return True


def replay_layers(net: PetriNet, dom: Multiset, layers) -> Multiset:
    m = dom
    for layer in layers:
        need, give = EMPTY, EMPTY
        for u, k in layer.items():
            need = msum(need, net.pre(u).scale(k))
            give = msum(give, net.post(u).scale(k))
        m = msum(mdiff(m, need), give)
    return m


@dataclass(frozen=True, eq=False)
class CommMorphism:
    net: PetriNet = field(repr=False)
    dom: Multiset
    cod: Multiset
    seq: tuple
    layers: tuple

    def __eq__(self, other) -> bool:
        if not isinstance(other, CommMorphism):
            return NotImplemented
        return self.dom == other.dom and self.seq == other.seq and self.net == other.net

    def __hash__(self) -> int:
        return hash((self.dom, self.seq))

    def __lt__(self, other: "CommMorphism") -> bool:
        return sort_key(self) < sort_key(other)

    def __str__(self) -> str:
        body = " ; ".join(self.seq)
        return f"{self.dom} | {body}" if body else f"{self.dom} |"


def sort_key(f: CommMorphism):
    return (len(f.seq), f.dom.size(), f.dom.items(), f.seq)


def _make(net: PetriNet, dom: Multiset, seq: tuple) -> CommMorphism:
    trace = replay(net, dom, seq)
    if trace is None:
        raise InvalidSequence(f"{list(seq)} is not firable from {dom}")
    canon = canonical_sequence(net, dom, seq)
    return CommMorphism(net, dom, trace[-1], canon, greedy_layers(net, dom, canon))


def comm_identity(net: PetriNet, m: Multiset) -> CommMorphism:
    return CommMorphism(net, m, m, (), ())


def comm_generator(net: PetriNet, u: str) -> CommMorphism:
    t = net.transition(u)
    return CommMorphism(net, t.pre, t.post, (u,), (Multiset({u: 1}),))


def comm_of_sequence(net: PetriNet, seq: FiringSequence | tuple, start: Multiset | None = None) -> CommMorphism:
    if isinstance(seq, FiringSequence):
        start, steps = seq.start, tuple(seq.steps)
    else:
        steps = tuple(seq)
    return _make(net, start, steps)


def comm_compose(f: CommMorphism, g: CommMorphism) -> CommMorphism:
    """Diagrammatic composite ``f ; g``."""
    if f.net != g.net:
        raise CodDomMismatch("morphisms belong to different nets")
    if f.cod != g.dom:
        raise CodDomMismatch(f"cod {f.cod} != dom {g.dom}")
    return _make(f.net, f.dom, f.seq + g.seq)


def comm_tensor(f: CommMorphism, g: CommMorphism) -> CommMorphism:
    if f.net != g.net:
        raise CodDomMismatch("morphisms belong to different nets")
    return _make(f.net, msum(f.dom, g.dom), f.seq + g.seq)


def comm_whisker(f: CommMorphism, m: Multiset) -> CommMorphism:
    return comm_tensor(f, comm_identity(f.net, m))


def comm_equal(f: CommMorphism, g: CommMorphism) -> bool:
    return f == g


def chi(f: CommMorphism) -> Multiset:
    """Number of occurrences of each generator."""
    return Multiset(f.seq)


def linearizations(f: CommMorphism) -> frozenset:
    return swap_class(f.net, f.dom, f.seq)


def realizations(net: PetriNet, dom: Multiset, counts: Multiset) -> list:
    """All morphisms from ``dom`` whose chi equals ``counts``."""
    out = set()
    remaining = dict(counts.items())

    def go(m, acc):
        if not any(remaining.values()):
            out.add(acc)
            return
        for u in sorted(remaining):
            if remaining[u] == 0:
                continue
            t = net.transition(u)
            if mleq(t.pre, m):
                remaining[u] -= 1
                go(msum(mdiff(m, t.pre), t.post), acc + (u,))
                remaining[u] += 1

    go(dom, ())
    classes = {canonical_sequence(net, dom, s) for s in out}
    return sorted(_make(net, dom, s) for s in classes)


def enumerate_comm(net: PetriNet, dom: Multiset, max_firings: int) -> list:
    """Every morphism out of ``dom`` using at most ``max_firings`` generators,
    one per equality class, sorted by size then sequence."""
    if max_firings < 0:
        raise ValueError("max_firings must be non-negative")
    found = {(): None}
    frontier = {(): dom}
    for _ in range(max_firings):
        nxt = {}
        for seq, m in frontier.items():
            for t in net.transitions:
                if mleq(t.pre, m):
                    s2 = seq + (t.name,)
                    nxt[s2] = msum(mdiff(m, t.pre), t.post)
        frontier = nxt
        for s in nxt:
            found[s] = None
    classes = {canonical_sequence(net, dom, s) for s in found}
    return sorted(_make(net, dom, s) for s in classes)


def reverse_sequence(net: PetriNet, dom: Multiset, seq: tuple) -> Multiset | None:
    """If ``reversed(seq)`` is firable in ``net`` ending at ``dom``, return its
    start marking (the marking the reversed run must begin from)."""
    # running backwards: m_prev = m - post(u) + pre(u)
    m = dom
    for u in seq:
        t = net.transition(u)
        if not mleq(t.post, m):
            return None
        m = msum(mdiff(m, t.post), t.pre)
    return m
