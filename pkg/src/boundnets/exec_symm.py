"""Executions in the individual-token philosophy.

A morphism of the free symmetric strict monoidal category on a net is an
acyclic port graph: boxes are transition occurrences, wires are tokens, and
the two interfaces are ordered strings of places. Symmetries are wires that
cross, so they leave no trace except in how positions are connected.

Endpoints are pairs of ints. A *source* is ``(-1, i)`` for input position
``i`` or ``(k, j)`` for output port ``j`` of box ``k``. A *target* is
``(-1, i)`` for output position ``i`` or ``(k, j)`` for input port ``j`` of
box ``k``. ``wiring`` maps every source to exactly one target.

Two diagrams are equal when some relabelling of boxes carries one onto the
other while fixing both interfaces. Ports are ordered, so a traversal from
the interface visits boxes in an order that does not depend on box ids; the
resulting encoding is a complete invariant (see :func:`canonical_form`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .multiset import Multiset
from .net import PetriNet

IN = -1  # marker for interface endpoints


class InterfaceMismatch(ValueError):
    pass


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Box:
    label: str
    ins: tuple
    outs: tuple


@dataclass(frozen=True, eq=False)
class Diagram:
    inputs: tuple
    outputs: tuple
    boxes: tuple
    wiring: tuple  # sorted ((src, tgt), ...)

    @cached_property
    def fwd(self) -> dict:
        return dict(self.wiring)

    @cached_property
    def bwd(self) -> dict:
        return {t: s for s, t in self.wiring}

    @cached_property
    def canon(self) -> tuple:
        return canonical_form(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.canon == other.canon

    def __hash__(self) -> int:
        return hash(self.canon)

    def __lt__(self, other: "Diagram") -> bool:
        return (len(self.boxes), self.canon) < (len(other.boxes), other.canon)

    @property
    def dom(self) -> tuple:
        return self.inputs

    @property
    def cod(self) -> tuple:
        return self.outputs

    def src_label(self, s) -> str:
        return self.inputs[s[1]] if s[0] == IN else self.boxes[s[0]].outs[s[1]]

    def tgt_label(self, t) -> str:
        return self.outputs[t[1]] if t[0] == IN else self.boxes[t[0]].ins[t[1]]

    def sources(self) -> list:
        out = [(IN, i) for i in range(len(self.inputs))]
        for k, b in enumerate(self.boxes):
            out.extend((k, j) for j in range(len(b.outs)))
        return out

    def targets(self) -> list:
        out = [(IN, i) for i in range(len(self.outputs))]
        for k, b in enumerate(self.boxes):
            out.extend((k, j) for j in range(len(b.ins)))
        return out

    def __repr__(self) -> str:
        bx = ", ".join(b.label for b in self.boxes)
        return f"Diagram({list(self.inputs)} -> {list(self.outputs)}; boxes=[{bx}])"


def make_diagram(inputs, outputs, boxes, wiring: dict, check: bool = True) -> Diagram:
    d = Diagram(tuple(inputs), tuple(outputs), tuple(boxes), tuple(sorted(wiring.items())))
    if check:
        check_diagram(d)
    return d


def check_diagram(d: Diagram) -> None:
    srcs, tgts = d.sources(), d.targets()
    if sorted(d.fwd) != sorted(srcs):
        raise DiagramError("wiring is not defined on exactly the sources")
    if sorted(d.fwd.values()) != sorted(tgts):
        raise DiagramError("wiring is not a bijection onto the targets")
    for s, t in d.wiring:
        if d.src_label(s) != d.tgt_label(t):
            raise DiagramError(f"wire {s}->{t} joins {d.src_label(s)} to {d.tgt_label(t)}")
    if not is_acyclic(d):
        raise DiagramError("box graph has a cycle")


def box_edges(d: Diagram) -> set:
    return {(s[0], t[0]) for s, t in d.wiring if s[0] != IN and t[0] != IN}


def is_acyclic(d: Diagram) -> bool:
    return topological_order(d) is not None


def topological_order(d: Diagram) -> list | None:
    n = len(d.boxes)
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for a, b in box_edges_multi(d):
        succ[a].append(b)
        indeg[b] += 1
    ready = [k for k in range(n) if indeg[k] == 0]
    order = []
    while ready:
        ready.sort()
        k = ready.pop(0)
        order.append(k)
        for b in succ[k]:
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
    return order if len(order) == n else None


def box_edges_multi(d: Diagram) -> list:
    return [(s[0], t[0]) for s, t in d.wiring if s[0] != IN and t[0] != IN]


# -- canonical form -----------------------------------------------------------

def _traverse(d: Diagram, seeds: list, allowed: set | None = None) -> list:
    """Boxes in discovery order, starting from ``seeds`` (box ids), then
    following ports in order: inputs first, then outputs."""
    order = []
    seen = set()

    def visit(k):
        if k not in seen and (allowed is None or k in allowed):
            seen.add(k)
            order.append(k)

    for k in seeds:
        visit(k)
    i = 0
    while i < len(order):
        k = order[i]
        b = d.boxes[k]
        for j in range(len(b.ins)):
            s = d.bwd[(k, j)]
            if s[0] != IN:
                visit(s[0])
        for j in range(len(b.outs)):
            t = d.fwd[(k, j)]
            if t[0] != IN:
                visit(t[0])
        i += 1
    return order


def _encode(d: Diagram, order: list) -> tuple:
    rank = {k: r for r, k in enumerate(order)}

    def rs(s):
        return s if s[0] == IN else (rank[s[0]], s[1])

    boxes = tuple((d.boxes[k].label, d.boxes[k].ins, d.boxes[k].outs) for k in order)
    feeds = tuple(tuple(rs(d.bwd[(k, j)]) for j in range(len(d.boxes[k].ins))) for k in order)
    return boxes, feeds


def canonical_form(d: Diagram) -> tuple:
    seeds = []
    for i in range(len(d.inputs)):
        t = d.fwd[(IN, i)]
        if t[0] != IN:
            seeds.append(t[0])
    for i in range(len(d.outputs)):
        s = d.bwd[(IN, i)]
        if s[0] != IN:
            seeds.append(s[0])
    main = _traverse(d, seeds)
    rank = {k: r for r, k in enumerate(main)}

    def rs(s):
        return s if s[0] == IN else (rank[s[0]], s[1])

    out_feeds = tuple(rs(d.bwd[(IN, i)]) for i in range(len(d.outputs)))
    main_code = _encode(d, main)
    rest = set(range(len(d.boxes))) - set(main)
    floating = []
    while rest:
        comp = set(_traverse(d, [min(rest)]))
        codes = [_encode(d, _traverse(d, [k], comp)) for k in sorted(comp)]
        floating.append(min(codes))
        rest -= comp
    return (d.inputs, d.outputs, out_feeds, main_code, tuple(sorted(floating)))


def sym_equal(f: Diagram, g: Diagram) -> bool:
    return f.canon == g.canon


# -- constructors ---------------------------------------------------------------

def sym_identity(s) -> Diagram:
    s = tuple(s)
    return make_diagram(s, s, (), {(IN, i): (IN, i) for i in range(len(s))}, check=False)


def sym_permutation(s, perm) -> Diagram:
    """Rewiring with ``outputs[i] = s[perm[i]]``."""
    s = tuple(s)
    perm = tuple(perm)
    if sorted(perm) != list(range(len(s))):
        raise DiagramError(f"{perm} is not a permutation of {len(s)} positions")
    return make_diagram(s, tuple(s[p] for p in perm), (), {(IN, p): (IN, i) for i, p in enumerate(perm)}, check=False)


def sym_symmetry(s, t) -> Diagram:
    s, t = tuple(s), tuple(t)
    n, m = len(s), len(t)
    perm = tuple(range(n, n + m)) + tuple(range(n))
    return sym_permutation(s + t, perm)


def stable_matching(src, dst) -> tuple:
    """Permutation ``perm`` with ``dst[i] = src[perm[i]]``; equal labels are
    matched in order of occurrence."""
    src, dst = tuple(src), tuple(dst)
    if Multiset(src) != Multiset(dst):
        raise InterfaceMismatch(f"{src} is not a rearrangement of {dst}")
    pools: dict = {}
    for i, x in enumerate(src):
        pools.setdefault(x, []).append(i)
    used = {x: 0 for x in pools}
    perm = []
    for x in dst:
        perm.append(pools[x][used[x]])
        used[x] += 1
    return tuple(perm)


def permutation_between(src, dst) -> Diagram:
    return sym_permutation(src, stable_matching(src, dst))


def sym_generator(net: PetriNet, u: str) -> Diagram:
    t = net.transition(u)
    box = Box(u, t.in_word, t.out_word)
    w = {(IN, j): (0, j) for j in range(len(box.ins))}
    w.update({(0, j): (IN, j) for j in range(len(box.outs))})
    return make_diagram(box.ins, box.outs, (box,), w, check=False)


def whiskered_generator(net: PetriNet, u: str, dom, cod) -> Diagram:
    """Generator ``u`` pre- and post-composed with the stable rearrangements
    from ``dom`` to its input word and from its output word to ``cod``."""
    g = sym_generator(net, u)
    return sym_compose(sym_compose(permutation_between(dom, g.inputs), g), permutation_between(g.outputs, cod))


# -- composition ----------------------------------------------------------------

def sym_compose(f: Diagram, g: Diagram) -> Diagram:
    """Diagrammatic composite ``f ; g``."""
    if f.outputs != g.inputs:
        raise InterfaceMismatch(f"{list(f.outputs)} != {list(g.inputs)}")
    n = len(f.boxes)

    def shift(e):
        return e if e[0] == IN else (e[0] + n, e[1])

    w = {}
    for s, t in f.wiring:
        if t[0] == IN:
            w[s] = shift(g.fwd[(IN, t[1])])
        else:
            w[s] = t
    for s, t in g.wiring:
        if s[0] != IN:
            w[shift(s)] = shift(t)
    return make_diagram(f.inputs, g.outputs, f.boxes + g.boxes, w, check=False)


def sym_tensor(f: Diagram, g: Diagram) -> Diagram:
    n = len(f.boxes)
    ni, no = len(f.inputs), len(f.outputs)

    def ss(e):
        return (IN, e[1] + ni) if e[0] == IN else (e[0] + n, e[1])

    def st(e):
        return (IN, e[1] + no) if e[0] == IN else (e[0] + n, e[1])

    w = dict(f.wiring)
    for s, t in g.wiring:
        w[ss(s)] = st(t)
    return make_diagram(f.inputs + g.inputs, f.outputs + g.outputs, f.boxes + g.boxes, w, check=False)


def tensor_all(ds, unit=()) -> Diagram:
    out = sym_identity(unit)
    for d in ds:
        out = sym_tensor(out, d)
    return out


def chi_sym(f: Diagram) -> Multiset:
    return Multiset(b.label for b in f.boxes)


def is_symmetry(f: Diagram) -> bool:
    return not f.boxes


def apply_functor(d: Diagram, obj, mor) -> Diagram:
    """Image of ``d`` under a strict monoidal functor given on generators.

    ``obj(label)`` returns a string (tuple) and ``mor(box_label)`` returns a
    Diagram whose interfaces are the images of the box's port strings.
    """
    img_in = [tuple(obj(x)) for x in d.inputs]
    img_out = [tuple(obj(x)) for x in d.outputs]
    in_off = list(itertools.accumulate([0] + [len(x) for x in img_in]))
    out_off = list(itertools.accumulate([0] + [len(x) for x in img_out]))
    subs = []
    box_off = [0]
    for b in d.boxes:
        D = mor(b.label)
        ins_img = tuple(y for x in b.ins for y in obj(x))
        outs_img = tuple(y for x in b.outs for y in obj(x))
        if D.inputs != ins_img or D.outputs != outs_img:
            raise InterfaceMismatch(f"image of {b.label} has interface {D.inputs}->{D.outputs}, expected {ins_img}->{outs_img}")
        port_in = list(itertools.accumulate([0] + [len(obj(x)) for x in b.ins]))
        port_out = list(itertools.accumulate([0] + [len(obj(x)) for x in b.outs]))
        out_pos = {}
        for j in range(len(b.outs)):
            for r in range(port_out[j + 1] - port_out[j]):
                out_pos[port_out[j] + r] = (j, r)
        subs.append((D, port_in, out_pos))
        box_off.append(box_off[-1] + len(D.boxes))

    def from_d_source(s, r):
        t = d.fwd[s]
        if t[0] == IN:
            return (IN, out_off[t[1]] + r)
        k, j = t
        D, port_in, _ = subs[k]
        return inside(k, D.fwd[(IN, port_in[j] + r)])

    def inside(k, tt):
        D, _, out_pos = subs[k]
        if tt[0] != IN:
            return (box_off[k] + tt[0], tt[1])
        j, r = out_pos[tt[1]]
        return from_d_source((k, j), r)

    w = {}
    for i, x in enumerate(img_in):
        for r in range(len(x)):
            w[(IN, in_off[i] + r)] = from_d_source((IN, i), r)
    boxes = []
    for k, (D, _, _) in enumerate(subs):
        for kk, b in enumerate(D.boxes):
            boxes.append(b)
            for jj in range(len(b.outs)):
                w[(box_off[k] + kk, jj)] = inside(k, D.fwd[(kk, jj)])
    return make_diagram(tuple(y for x in img_in for y in x), tuple(y for x in img_out for y in x), tuple(boxes), w)


def to_sequence(d: Diagram) -> tuple:
    """Box labels in a topological order (the least one by box index)."""
    return tuple(d.boxes[k].label for k in topological_order(d))


# -- enumeration ----------------------------------------------------------------

def _attach(d: Diagram, u_box: Box, chosen: tuple) -> Diagram:
    """Feed output positions ``chosen`` (one per input port) into a new box."""
    k = len(d.boxes)
    chosen_at = {o: j for j, o in enumerate(chosen)}
    remaining = [o for o in range(len(d.outputs)) if o not in chosen_at]
    new_pos = {o: i for i, o in enumerate(remaining)}
    w = {}
    for s, t in d.wiring:
        if t[0] == IN:
            o = t[1]
            w[s] = (k, chosen_at[o]) if o in chosen_at else (IN, new_pos[o])
        else:
            w[s] = t
    base = len(remaining)
    for j in range(len(u_box.outs)):
        w[(k, j)] = (IN, base + j)
    outs = tuple(d.outputs[o] for o in remaining) + u_box.outs
    return make_diagram(d.inputs, outs, d.boxes + (u_box,), w, check=False)


def _choices(outputs: tuple, ins: tuple):
    def go(j, used):
        if j == len(ins):
            yield ()
            return
        for o, lab in enumerate(outputs):
            if lab == ins[j] and o not in used:
                for rest in go(j + 1, used | {o}):
                    yield (o,) + rest

    yield from go(0, frozenset())


def _reorder_outputs(d: Diagram, perm) -> Diagram:
    return sym_compose(d, sym_permutation(d.outputs, perm))


def _unordered_key(d: Diagram) -> tuple:
    """Invariant of ``d`` up to rearranging its outputs."""
    order = sorted(range(len(d.outputs)), key=lambda i: d.outputs[i])
    groups = [list(g) for _, g in itertools.groupby(order, key=lambda i: d.outputs[i])]
    best = None
    for combo in itertools.product(*(itertools.permutations(g) for g in groups)):
        perm = tuple(i for g in combo for i in g)
        c = _reorder_outputs(d, perm).canon
        if best is None or c < best:
            best = c
    return best


def enumerate_sym(net: PetriNet, dom, max_boxes: int, max_outputs: int | None = None) -> list:
    """All diagrams out of ``dom`` with at most ``max_boxes`` boxes, one per
    equality class, every output ordering included. ``max_outputs`` drops
    results whose codomain is longer."""
    if max_boxes < 0:
        raise ValueError("max_boxes must be non-negative")
    dom = tuple(dom)
    boxes = [Box(t.name, t.in_word, t.out_word) for t in net.transitions]
    level = {_unordered_key(sym_identity(dom)): sym_identity(dom)}
    partials = dict(level)
    for _ in range(max_boxes):
        nxt = {}
        for d in level.values():
            for b in boxes:
                for chosen in _choices(d.outputs, b.ins):
                    d2 = _attach(d, b, chosen)
                    key = _unordered_key(d2)
                    if key not in partials and key not in nxt:
                        nxt[key] = d2
        partials.update(nxt)
        level = nxt
    out = set()
    for d in partials.values():
        if max_outputs is not None and len(d.outputs) > max_outputs:
            continue
        for perm in set(itertools.permutations(range(len(d.outputs)))):
            out.add(_reorder_outputs(d, perm))
    return sorted(out)


def symmetries(s) -> list:
    """All rewirings of the string ``s`` onto its rearrangements."""
    s = tuple(s)
    return sorted({sym_permutation(s, p) for p in itertools.permutations(range(len(s)))})
