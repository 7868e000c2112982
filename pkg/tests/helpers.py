"""Shared builders, random generators and independent oracles for the tests.

The oracles here deliberately avoid the package's own algorithms: markings
are plain dicts, the swap closure is recomputed from scratch, and diagram
isomorphism is decided by brute force over box bijections.
"""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from boundnets.exec_symm import IN
from boundnets.multiset import Multiset
from boundnets.net import PetriNet, Transition, make_net

PLACE_NAMES = "pqrsuvw"

# "PASS criterion N: ..." lines, printed at the end of the session
ACCEPTANCE_LINES: list = []


def n0() -> PetriNet:
    return make_net("abc", {"t1": ({"a": 1, "b": 1}, {"c": 1}), "t2": ({"c": 1}, {"b": 2})})


M0 = Multiset({"a": 1, "b": 1, "c": 1})


def random_net(rng: random.Random, max_places: int = 5, max_transitions: int = 5, max_weight: int = 3,
               min_transitions: int = 1) -> PetriNet:
    places = PLACE_NAMES[: rng.randint(1, max_places)]
    ts = []
    for i in range(rng.randint(min_transitions, max_transitions)):
        pre = {p: rng.randint(1, max_weight) for p in places if rng.random() < 0.4}
        post = {p: rng.randint(1, max_weight) for p in places if rng.random() < 0.4}
        ts.append(Transition(f"u{i}", Multiset(pre), Multiset(post)))
    return PetriNet(tuple(places), tuple(ts))


def random_marking(rng: random.Random, places, max_count: int = 3) -> Multiset:
    return Multiset({p: rng.randint(0, max_count) for p in places})


@st.composite
def nets(draw, max_places: int = 4, max_transitions: int = 4, max_weight: int = 2):
    n_places = draw(st.integers(1, max_places))
    places = PLACE_NAMES[:n_places]
    weights = st.dictionaries(st.sampled_from(places), st.integers(1, max_weight), max_size=n_places)
    n_ts = draw(st.integers(0, max_transitions))
    ts = [Transition(f"u{i}", Multiset(draw(weights)), Multiset(draw(weights))) for i in range(n_ts)]
    return PetriNet(tuple(places), tuple(ts))


multisets = st.dictionaries(st.sampled_from("abcde"), st.integers(0, 5), max_size=5).map(Multiset)


# -- independent oracles ---------------------------------------------------------

def _fire_dict(net: PetriNet, m: dict, u: str):
    t = net.transition(u)
    out = dict(m)
    for p, k in t.pre.items():
        if out.get(p, 0) < k:
            return None
        out[p] -= k
    for p, k in t.post.items():
        out[p] = out.get(p, 0) + k
    return out


def valid_sequence(net: PetriNet, start: Multiset, seq) -> bool:
    m = start.as_dict()
    for u in seq:
        m = _fire_dict(net, m, u)
        if m is None:
            return False
    return True


def oracle_swap_class(net: PetriNet, start: Multiset, seq) -> frozenset:
    """Reflexive-transitive closure of valid adjacent exchanges."""
    seq = tuple(seq)
    seen = {seq}
    stack = [seq]
    while stack:
        s = stack.pop()
        for i in range(len(s) - 1):
            t = s[:i] + (s[i + 1], s[i]) + s[i + 2:]
            if t not in seen and valid_sequence(net, start, t):
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def all_sequences(net: PetriNet, start: Multiset, max_len: int) -> list:
    out = [()]
    frontier = [((), start.as_dict())]
    for _ in range(max_len):
        nxt = []
        for seq, m in frontier:
            for t in net.transitions:
                m2 = _fire_dict(net, m, t.name)
                if m2 is not None:
                    nxt.append((seq + (t.name,), m2))
        out.extend(s for s, _ in nxt)
        frontier = nxt
    return out


def diagrams_isomorphic(d1, d2) -> bool:
    """Brute force: some label-preserving bijection of boxes carries the
    wiring of ``d1`` onto that of ``d2`` while fixing the interfaces."""
    if d1.inputs != d2.inputs or d1.outputs != d2.outputs or len(d1.boxes) != len(d2.boxes):
        return False
    n = len(d1.boxes)
    w2 = set(d2.wiring)
    for perm in itertools.permutations(range(n)):
        if any((d1.boxes[k].label, d1.boxes[k].ins, d1.boxes[k].outs) != (d2.boxes[perm[k]].label, d2.boxes[perm[k]].ins, d2.boxes[perm[k]].outs) for k in range(n)):
            continue

        def mv(e):
            return e if e[0] == IN else (perm[e[0]], e[1])

        if {(mv(s), mv(t)) for s, t in d1.wiring} == w2:
            return True
    return False


def relabel_boxes(d, perm):
    """The same diagram with box ``k`` stored at index ``perm[k]``."""
    from boundnets.exec_symm import make_diagram

    boxes = [None] * len(d.boxes)
    for k, b in enumerate(d.boxes):
        boxes[perm[k]] = b

    def mv(e):
        return e if e[0] == IN else (perm[e[0]], e[1])

    return make_diagram(d.inputs, d.outputs, tuple(boxes), {mv(s): mv(t) for s, t in d.wiring})
