"""Place/transition nets, firing, and explicit state-space exploration."""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .multiset import EMPTY, Multiset, mdiff, mleq, msum, parse_multiset

SIGN_CHARS = "+-"


class NetError(ValueError):
    pass


class UnknownTransition(NetError, KeyError):
    pass


class NotEnabled(NetError):
    pass


class NetParseError(NetError):
    pass


def expand(m: Multiset) -> tuple:
    return m.elements()


@dataclass(frozen=True)
class Transition:
    """A transition with pre/post multisets.

    ``in_word``/``out_word`` fix the port order used in the individual-token
    category; by default they are the sorted expansions of ``pre``/``post``.
    """

    name: str
    pre: Multiset = EMPTY
    post: Multiset = EMPTY
    in_word: tuple | None = None
    out_word: tuple | None = None

    def __post_init__(self):
        if self.in_word is None:
            object.__setattr__(self, "in_word", expand(self.pre))
        if self.out_word is None:
            object.__setattr__(self, "out_word", expand(self.post))
        if Multiset(self.in_word) != self.pre or Multiset(self.out_word) != self.post:
            raise NetError(f"port words of {self.name} disagree with its pre/post")


@dataclass(frozen=True)
class PetriNet:
    places: tuple
    transitions: tuple = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if len(set(self.places)) != len(self.places):
            raise NetError("duplicate place names")
        idx = {}
        pset = set(self.places)
        for t in self.transitions:
            if t.name in idx:
                raise NetError(f"duplicate transition name {t.name!r}")
            for p in t.pre.keys() + t.post.keys():
                if p not in pset:
                    raise NetError(f"transition {t.name!r} uses unknown place {p!r}")
            idx[t.name] = t
        object.__setattr__(self, "_index", idx)

    def transition(self, name: str) -> Transition:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownTransition(f"no transition named {name!r}") from None

    def pre(self, name: str) -> Multiset:
        return self.transition(name).pre

    def post(self, name: str) -> Multiset:
        return self.transition(name).post

    @property
    def transition_names(self) -> tuple:
        return tuple(t.name for t in self.transitions)

    def check_marking(self, m: Multiset) -> None:
        bad = m.support() - set(self.places)
        if bad:
            raise NetError(f"marking mentions unknown places {sorted(bad)}")


def make_net(places: Iterable[str], transitions: dict) -> PetriNet:
    """Shorthand: ``make_net("abc", {"t1": ({"a": 1, "b": 1}, {"c": 1})})``."""
    ts = [Transition(n, Multiset(i), Multiset(o)) for n, (i, o) in transitions.items()]
    return PetriNet(tuple(places), tuple(ts))


def enabled(net: PetriNet, m: Multiset, u: str) -> bool:
    return mleq(net.pre(u), m)


def fire(net: PetriNet, m: Multiset, u: str) -> Multiset:
    t = net.transition(u)
    if not mleq(t.pre, m):
        raise NotEnabled(f"{u} is not enabled at {m}")
    return msum(mdiff(m, t.pre), t.post)


def fire_sequence(net: PetriNet, m: Multiset, seq: Iterable[str]) -> list:
    """Marking trace ``[m, m1, ..., mk]``."""
    trace = [m]
    for u in seq:
        m = fire(net, m, u)
        trace.append(m)
    return trace


@dataclass
class ReachabilityGraph:
    nodes: list
    edges: list
    truncated: bool = False
    bound: int | None = None

    def successors(self, m: Multiset) -> list:
        return [(u, m2) for m1, u, m2 in self.edges if m1 == m]


def _max_states() -> int:
    return int(os.environ.get("BOUNDNETS_MAX_STATES", "1000000"))


def explore(net: PetriNet, m0: Multiset, max_tokens: int) -> ReachabilityGraph:
    """Breadth-first reachability restricted to markings with at most
    ``max_tokens`` tokens in total.

    Transitions are tried in declaration order, so node and edge lists are
    deterministic. ``truncated`` is set when some firing was discarded because
    its result exceeded the cutoff. ``BOUNDNETS_MAX_STATES`` caps the number
    of stored markings.
    """
    if m0.size() > max_tokens:
        raise NetError("initial marking already exceeds max_tokens")
    cap = _max_states()
    seen = {m0}
    nodes = [m0]
    edges = []
    truncated = False
    queue = deque([m0])
    while queue:
        m = queue.popleft()
        for t in net.transitions:
            if not mleq(t.pre, m):
                continue
            m2 = msum(mdiff(m, t.pre), t.post)
            if m2.size() > max_tokens:
                truncated = True
                continue
            edges.append((m, t.name, m2))
            if m2 not in seen:
                if len(seen) >= cap:
                    raise MemoryError(f"more than {cap} reachable markings")
                seen.add(m2)
                nodes.append(m2)
                queue.append(m2)
    return ReachabilityGraph(nodes, edges, truncated, max_tokens if truncated else None)


def is_k_bounded(net: PetriNet, m0: Multiset, k: int) -> bool | None:
    """True iff no reachable marking puts more than ``k`` tokens on a place.

    Successors are checked for violations before the token cutoff
    ``(k + 1) * |places|`` is applied, so a successor of a k-bounded marking
    is either a violation or within the cutoff; the ``None`` (unknown) result
    is kept for completeness but is not produced in practice.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if any(c > k for _, c in m0.items()):
        return False
    cutoff = (k + 1) * max(1, len(net.places))
    seen = {m0}
    queue = deque([m0])
    truncated = False
    while queue:
        m = queue.popleft()
        for t in net.transitions:
            if not mleq(t.pre, m):
                continue
            m2 = msum(mdiff(m, t.pre), t.post)
            if any(c > k for _, c in m2.items()):
                return False
            if m2.size() > cutoff:
                truncated = True
                continue
            if m2 not in seen:
                seen.add(m2)
                queue.append(m2)
    return None if truncated else True


# -- file format -------------------------------------------------------------

def _read_multiset(value, where: str) -> Multiset:
    if value is None:
        return EMPTY
    if isinstance(value, str):
        try:
            return parse_multiset(value)
        except ValueError as e:
            raise NetParseError(f"{where}: {e}") from None
    if isinstance(value, dict):
        try:
            return Multiset(value)
        except ValueError as e:
            raise NetParseError(f"{where}: {e}") from None
    if isinstance(value, list):
        return Multiset(value)
    raise NetParseError(f"{where}: cannot read a multiset from {value!r}")


def net_from_dict(data: dict, allow_signed: bool = False) -> tuple:
    """Build ``(net, marking)`` from the decoded net file object."""
    if not isinstance(data, dict):
        raise NetParseError("top level must be an object")
    places = data.get("places")
    if not isinstance(places, list) or not all(isinstance(p, str) and p for p in places):
        raise NetParseError("'places' must be a list of non-empty strings")
    if not allow_signed:
        for p in places:
            if any(c in p for c in SIGN_CHARS):
                raise NetParseError(f"place {p!r} uses a reserved character (+ or -)")
    ts = []
    for i, t in enumerate(data.get("transitions", [])):
        where = f"transitions[{i}]"
        if not isinstance(t, dict) or "name" not in t:
            raise NetParseError(f"{where}: expected an object with a 'name'")
        pre = _read_multiset(t.get("in"), where + ".in")
        post = _read_multiset(t.get("out"), where + ".out")
        in_word = tuple(t["in_word"]) if "in_word" in t else None
        out_word = tuple(t["out_word"]) if "out_word" in t else None
        ts.append(Transition(str(t["name"]), pre, post, in_word, out_word))
    try:
        net = PetriNet(tuple(places), tuple(ts))
    except NetError as e:
        raise NetParseError(str(e)) from None
    marking = _read_multiset(data.get("marking"), "marking")
    try:
        net.check_marking(marking)
    except NetError as e:
        raise NetParseError(str(e)) from None
    return net, marking


def loads_net(text: str, allow_signed: bool = False) -> tuple:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise NetParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return net_from_dict(data, allow_signed=allow_signed)


def load_net(path, allow_signed: bool = False) -> tuple:
    with open(path) as fh:
        return loads_net(fh.read(), allow_signed=allow_signed)


def net_to_dict(net: PetriNet, marking: Multiset | None = None) -> dict:
    ts = []
    for t in net.transitions:
        d = {"name": t.name, "in": t.pre.as_dict(), "out": t.post.as_dict()}
        if t.in_word != expand(t.pre):
            d["in_word"] = list(t.in_word)
        if t.out_word != expand(t.post):
            d["out_word"] = list(t.out_word)
        ts.append(d)
    out = {"places": list(net.places), "transitions": ts}
    if marking is not None:
        out["marking"] = marking.as_dict()
    return out


def dumps_net(net: PetriNet, marking: Multiset | None = None) -> str:
    return json.dumps(net_to_dict(net, marking), indent=2)
