"""The anti-place construction and its comonad structure.

Bounding doubles every place ``p`` into ``p+`` (tokens) and ``p-``
(anti-tokens, i.e. free capacity). A transition consuming ``P`` and
producing ``Q`` becomes one consuming ``P+ + Q-`` and producing
``P- + Q+``, so ``m(p+) + m(p-)`` never changes.

Strict monoidal functors between execution categories are given by
:class:`FunctorPresentation`: images of generating objects (strings of
places) and of generating morphisms (a :class:`CommMorphism` or a
:class:`Diagram` in the target).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exec_comm import CommMorphism, comm_generator, comm_of_sequence, replay
from .exec_symm import (
    IN,
    Box,
    Diagram,
    InterfaceMismatch,
    apply_functor,
    make_diagram,
    permutation_between,
    sym_compose,
    sym_generator,
    tensor_all,
    whiskered_generator,
)
from .multiset import Multiset, msum
from .net import PetriNet, Transition

COMM, FREE = "comm", "free"
PHILOSOPHIES = (COMM, FREE)


class CapacityExceeded(ValueError):
    pass


class PresentationMismatch(ValueError):
    pass


def fwd(p: str) -> str:
    return p + "+"


def bwd(p: str) -> str:
    return p + "-"


@dataclass(frozen=True, order=True)
class SignedPlace:
    base: str
    polarity: str  # "+" or "-"

    def __str__(self) -> str:
        return self.base + self.polarity

    @classmethod
    def parse(cls, s: str) -> "SignedPlace":
        if not s or s[-1] not in "+-":
            raise ValueError(f"{s!r} is not a signed place")
        return cls(s[:-1], s[-1])


def erase(word) -> tuple:
    """Drop anti-places and strip the sign of places."""
    return tuple(x[:-1] for x in word if x.endswith("+"))


def _interleave(xs, ys) -> list:
    out = []
    for i in range(max(len(xs), len(ys))):
        if i < len(xs):
            out.append(xs[i])
        if i < len(ys):
            out.append(ys[i])
    return out


def bounded_provenance(in_word, out_word) -> tuple:
    """Port provenance of the bounded transition.

    Returns ``(pre, post)`` lists of ``(sign, side, index)``: the bounded input
    word interleaves forward copies of the inputs with backward copies of the
    outputs, the output word the other way round.
    """
    pre = _interleave([("+", "in", i) for i in range(len(in_word))],
                      [("-", "out", j) for j in range(len(out_word))])
    post = _interleave([("-", "in", i) for i in range(len(in_word))],
                       [("+", "out", j) for j in range(len(out_word))])
    return pre, post


def _word(prov, in_word, out_word) -> tuple:
    return tuple((in_word if side == "in" else out_word)[i] + sign for sign, side, i in prov)


@lru_cache(maxsize=256)
def bound_net(net: PetriNet) -> PetriNet:
    places = tuple(q for p in net.places for q in (fwd(p), bwd(p)))
    ts = []
    for t in net.transitions:
        pre_prov, post_prov = bounded_provenance(t.in_word, t.out_word)
        in_w = _word(pre_prov, t.in_word, t.out_word)
        out_w = _word(post_prov, t.in_word, t.out_word)
        ts.append(Transition(t.name, Multiset(in_w), Multiset(out_w), in_w, out_w))
    return PetriNet(places, tuple(ts))


def signed_marking(m: Multiset, sign: str) -> Multiset:
    return m.map(lambda p: p + sign)


def split_marking(m: Multiset) -> tuple:
    """``(tokens, anti_tokens)`` of a marking of a bounded net."""
    pos = Multiset({k[:-1]: v for k, v in m.items() if k.endswith("+")})
    neg = Multiset({k[:-1]: v for k, v in m.items() if k.endswith("-")})
    return pos, neg


def initial_antimarking(net: PetriNet, m0: Multiset, capacity: dict) -> Multiset:
    out = {}
    for p in net.places:
        cap = capacity.get(p)
        if cap is None:
            raise CapacityExceeded(f"no capacity given for place {p!r}")
        if cap < m0[p]:
            raise CapacityExceeded(f"place {p!r} holds {m0[p]} > capacity {cap}")
        out[fwd(p)] = m0[p]
        out[bwd(p)] = cap - m0[p]
    return Multiset(out)


# -- functor presentations -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FunctorPresentation:
    source: PetriNet
    target: PetriNet
    philosophy: str
    object_map: dict = field(repr=False)
    morphism_map: dict = field(repr=False)
    name: str = "F"

    def obj(self, x: str) -> tuple:
        return self.object_map[x]

    def on_word(self, word) -> tuple:
        return tuple(y for x in word for y in self.object_map[x])

    def on_multiset(self, m: Multiset) -> Multiset:
        out = Multiset()
        for x, k in m.items():
            out = msum(out, Multiset(self.object_map[x]).scale(k))
        return out

    def on_object(self, x):
        return self.on_multiset(x) if self.philosophy == COMM else self.on_word(x)

    def on_morphism(self, f):
        if self.philosophy == COMM:
            seq = tuple(v for u in f.seq for v in self.morphism_map[u].seq)
            return comm_of_sequence(self.target, seq, start=self.on_multiset(f.dom))
        return apply_functor(f, self.obj, self.morphism_map.__getitem__)

    def validate(self) -> list:
        """Generators whose image does not have the expected dom/cod."""
        bad = []
        for x in self.source.places:
            if x not in self.object_map:
                bad.append(x)
        for t in self.source.transitions:
            img = self.morphism_map.get(t.name)
            if img is None:
                bad.append(t.name)
            elif self.philosophy == COMM:
                if img.dom != self.on_multiset(t.pre) or img.cod != self.on_multiset(t.post):
                    bad.append(t.name)
            elif img.inputs != self.on_word(t.in_word) or img.outputs != self.on_word(t.out_word):
                bad.append(t.name)
        return bad


def generator(net: PetriNet, u: str, philosophy: str):
    return comm_generator(net, u) if philosophy == COMM else sym_generator(net, u)


def identity_presentation(net: PetriNet, philosophy: str) -> FunctorPresentation:
    return FunctorPresentation(
        net, net, philosophy,
        {p: (p,) for p in net.places},
        {u: generator(net, u, philosophy) for u in net.transition_names},
        name="id",
    )


def counit_presentation(net: PetriNet, philosophy: str) -> FunctorPresentation:
    bn = bound_net(net)
    obj = {}
    for p in net.places:
        obj[fwd(p)] = (p,)
        obj[bwd(p)] = ()
    return FunctorPresentation(bn, net, philosophy, obj,
                               {u: generator(net, u, philosophy) for u in net.transition_names},
                               name="counit")


def comult_object(x: str) -> tuple:
    """Image of a generating object of the bounded net under the comultiplication."""
    p, s = x[:-1], x[-1]
    if s == "+":
        return (p + "++", p + "--")
    return (p + "-+", p + "+-")


def comult_presentation(net: PetriNet, philosophy: str) -> FunctorPresentation:
    bn = bound_net(net)
    bbn = bound_net(bn)
    obj = {x: comult_object(x) for x in bn.places}
    mor = {}
    for t in bn.transitions:
        if philosophy == COMM:
            mor[t.name] = comm_generator(bbn, t.name)
        else:
            dom = tuple(y for x in t.in_word for y in obj[x])
            cod = tuple(y for x in t.out_word for y in obj[x])
            mor[t.name] = whiskered_generator(bbn, t.name, dom, cod)
    return FunctorPresentation(bn, bbn, philosophy, obj, mor, name="comult")


def compose_presentations(F: FunctorPresentation, G: FunctorPresentation) -> FunctorPresentation:
    """``F ; G`` (apply ``F`` first)."""
    if F.target != G.source or F.philosophy != G.philosophy:
        raise PresentationMismatch(f"cannot compose {F.name} with {G.name}")
    obj = {x: G.on_word(F.obj(x)) for x in F.source.places}
    mor = {u: G.on_morphism(img) for u, img in F.morphism_map.items()}
    return FunctorPresentation(F.source, G.target, F.philosophy, obj, mor, name=f"{F.name};{G.name}")


def bound_comm_morphism(f: CommMorphism, bnet: PetriNet) -> CommMorphism:
    dom = msum(signed_marking(f.dom, "+"), signed_marking(f.cod, "-"))
    if replay(bnet, dom, f.seq) is None:
        raise PresentationMismatch(f"{f} cannot be bounded generator-wise")
    return comm_of_sequence(bnet, f.seq, start=dom)


def bound_diagram(d: Diagram, dom_layout, cod_layout, bnet: PetriNet) -> Diagram:
    """Bound a diagram whose boxes are not wired to each other.

    ``dom_layout``/``cod_layout`` list, for every position of the bounded
    interfaces, ``(sign, side, pos)``: a forward copy of input ``pos`` of
    ``d`` or a backward copy of output ``pos``, and dually for the codomain.
    Forward wires keep their direction; backward wires are reversed.
    """
    cod_at = {e: i for i, e in enumerate(cod_layout)}
    boxes, in_port, out_port = [], [], []
    for b in d.boxes:
        t = bnet.transition(b.label)
        pre_prov, post_prov = bounded_provenance(b.ins, b.outs)
        if _word(pre_prov, b.ins, b.outs) != t.in_word:
            raise InterfaceMismatch(f"box {b.label} does not match its bounded transition")
        boxes.append(Box(b.label, t.in_word, t.out_word))
        in_port.append({e: j for j, e in enumerate(pre_prov)})
        out_port.append({e: j for j, e in enumerate(post_prov)})

    def label_of(layout_entry):
        sign, side, pos = layout_entry
        return (d.inputs if side == "in" else d.outputs)[pos] + sign

    w = {}
    for i, (sign, side, pos) in enumerate(dom_layout):
        if (sign, side) == ("+", "in"):
            t = d.fwd[(IN, pos)]
            w[(IN, i)] = (IN, cod_at[("+", "out", t[1])]) if t[0] == IN else (t[0], in_port[t[0]][("+", "in", t[1])])
        elif (sign, side) == ("-", "out"):
            s = d.bwd[(IN, pos)]
            w[(IN, i)] = (IN, cod_at[("-", "in", s[1])]) if s[0] == IN else (s[0], in_port[s[0]][("-", "out", s[1])])
        else:
            raise InterfaceMismatch(f"domain layout entry {(sign, side, pos)} is not allowed")
    for k, b in enumerate(d.boxes):
        for (sign, side, j), jj in out_port[k].items():
            if sign == "+":
                t = d.fwd[(k, j)]
                if t[0] != IN:
                    raise InterfaceMismatch("boxes wired in sequence cannot be bounded generator-wise")
                w[(k, jj)] = (IN, cod_at[("+", "out", t[1])])
            else:
                s = d.bwd[(k, j)]
                if s[0] != IN:
                    raise InterfaceMismatch("boxes wired in sequence cannot be bounded generator-wise")
                w[(k, jj)] = (IN, cod_at[("-", "in", s[1])])
    return make_diagram(tuple(label_of(e) for e in dom_layout), tuple(label_of(e) for e in cod_layout), tuple(boxes), w)


def _segments(words_img) -> list:
    offs, o = [], 0
    for w in words_img:
        offs.append(o)
        o += len(w)
    return offs


def bound_presentation(F: FunctorPresentation) -> FunctorPresentation:
    """The functorial action of bounding: ``x+ -> F(x)+``, ``x- -> F(x)-``,
    generator ``u`` to the bounded image of ``F(u)``."""
    bs, bt = bound_net(F.source), bound_net(F.target)
    obj = {}
    for x in F.source.places:
        obj[fwd(x)] = tuple(fwd(y) for y in F.obj(x))
        obj[bwd(x)] = tuple(bwd(y) for y in F.obj(x))
    mor = {}
    for t in F.source.transitions:
        img = F.morphism_map[t.name]
        if F.philosophy == COMM:
            mor[t.name] = bound_comm_morphism(img, bt)
            continue
        in_off = _segments([F.obj(x) for x in t.in_word])
        out_off = _segments([F.obj(x) for x in t.out_word])
        pre_prov, post_prov = bounded_provenance(t.in_word, t.out_word)

        def layout(prov):
            out = []
            for sign, side, i in prov:
                word = t.in_word if side == "in" else t.out_word
                off = (in_off if side == "in" else out_off)[i]
                out.extend((sign, side, off + r) for r in range(len(F.obj(word[i]))))
            return out

        mor[t.name] = bound_diagram(img, layout(pre_prov), layout(post_prov), bt)
    return FunctorPresentation(bs, bt, F.philosophy, obj, mor, name=f"B({F.name})")


def _object_images_equal(F, G, x) -> bool:
    if F.philosophy == COMM:
        return Multiset(F.obj(x)) == Multiset(G.obj(x))
    return F.obj(x) == G.obj(x)


def presentation_differences(F: FunctorPresentation, G: FunctorPresentation) -> list:
    """Generators on which ``F`` and ``G`` disagree (empty list: equal)."""
    if F.source != G.source or F.target != G.target or F.philosophy != G.philosophy:
        return ["<signature>"]
    bad = [x for x in F.source.places if not _object_images_equal(F, G, x)]
    bad += [u for u in F.source.transition_names if F.morphism_map[u] != G.morphism_map[u]]
    return bad


def symmetric_differences(F: FunctorPresentation, G: FunctorPresentation) -> list:
    """Generators on which ``F`` and ``G`` disagree modulo the canonical
    rearrangement ``pi_x : F(x) -> G(x)`` of each generating object.

    Checks ``F(u) ; pi(cod u) == pi(dom u) ; G(u)`` for every generator ``u``,
    which makes ``pi`` a monoidal natural isomorphism built from symmetries.
    """
    if F.philosophy != FREE:
        return presentation_differences(F, G)
    if F.source != G.source or F.target != G.target:
        return ["<signature>"]
    bad = [x for x in F.source.places if Multiset(F.obj(x)) != Multiset(G.obj(x))]
    if bad:
        return bad
    pi = {x: permutation_between(F.obj(x), G.obj(x)) for x in F.source.places}
    for t in F.source.transitions:
        lhs = sym_compose(F.morphism_map[t.name], tensor_all(pi[x] for x in t.out_word))
        rhs = sym_compose(tensor_all(pi[x] for x in t.in_word), G.morphism_map[t.name])
        if lhs != rhs:
            bad.append(t.name)
    return bad


@dataclass
class ComonadReport:
    philosophy: str
    laws: dict  # law name -> list of failing generators
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(not v for v in self.laws.values())

    def lines(self) -> list:
        out = []
        for k, v in self.laws.items():
            out.append(f"{'PASS' if not v else 'FAIL'} {k}" + (f" (failing: {', '.join(v)})" if v else ""))
        for k, v in self.notes.items():
            out.append(f"note {k}: {v}")
        return out


def check_comonad_laws(net: PetriNet, philosophy: str) -> ComonadReport:
    """Coassociativity and both counit laws, generator by generator.

    In the collective case all three hold as equalities of presentations.
    In the individual case the counit laws hold on the nose, but no ordering
    of the strings ``comult(x)`` makes coassociativity strict on objects, so
    it is checked (a) up to the canonical rearrangement isomorphism and (b)
    exactly in the fibre-product model of the doubly bounded category, where
    the comultiplication is the diagonal.
    """
    bn = bound_net(net)
    d = comult_presentation(net, philosophy)
    d_b = comult_presentation(bn, philosophy)
    e = counit_presentation(net, philosophy)
    e_b = counit_presentation(bn, philosophy)
    ident = identity_presentation(bn, philosophy)
    lhs = compose_presentations(d, bound_presentation(d))
    rhs = compose_presentations(d, d_b)
    laws = {
        "counit (comult ; counit of bounded net = id)": presentation_differences(compose_presentations(d, e_b), ident),
        "counit (comult ; bound(counit) = id)": presentation_differences(compose_presentations(d, bound_presentation(e)), ident),
    }
    notes = {}
    if philosophy == COMM:
        laws["coassociativity"] = presentation_differences(lhs, rhs)
    else:
        strict = presentation_differences(lhs, rhs)
        notes["coassociativity on the nose"] = "holds" if not strict else f"differs on {len(strict)} generators"
        laws["coassociativity up to canonical symmetry"] = symmetric_differences(lhs, rhs)
        laws["coassociativity in the fibre-product model"] = fibre_product_coassociativity(net)
    return ComonadReport(philosophy, laws, notes)


def fibre_product_coassociativity(net: PetriNet) -> list:
    """Comonad laws for the comultiplication obtained from the pullback.

    Cells of the twice-bounded category are pairs ``(c1, c2)`` of cells of
    the bounded category with equal erasure; thrice-bounded cells are pairs
    ``((c1, c2), c3)``. The comultiplication is the unique map into the
    pullback induced by ``(id, point)``, i.e. ``c -> (c, c)``.
    """
    bn = bound_net(net)
    e = counit_presentation(net, FREE)
    cells = [(x,) for x in bn.places] + [sym_generator(bn, u) for u in bn.transition_names]
    bad = []

    def er(c):
        return e.on_word(c) if isinstance(c, tuple) else e.on_morphism(c)

    def in_square(pair):
        return er(pair[0]) == er(pair[1])

    def alpha(c):
        return (c, c)

    def eps1(p):
        return p[0]

    def q1(p):
        return p[1]

    def alpha_b(p):  # unique map for the cone (id, Q1)
        return (p, q1(p))

    def b_alpha(p):  # unique map for the cone (eps1 ; alpha, Q1)
        return (alpha(eps1(p)), q1(p))

    for c in cells:
        label = c[0] if isinstance(c, tuple) else c.boxes[0].label
        a = alpha(c)
        if not in_square(a):
            bad.append(label)
            continue
        l, r = alpha_b(a), b_alpha(a)
        if not (in_square(l[0]) and er(l[0][0]) == er(l[1]) and in_square(r[0]) and er(r[0][0]) == er(r[1])):
            bad.append(label)
        elif l[0] != r[0] or l[1] != r[1]:  # both projections agree, so the maps agree
            bad.append(label)
        elif eps1(a) != c or q1(a) != c:
            bad.append(label)
    return bad
