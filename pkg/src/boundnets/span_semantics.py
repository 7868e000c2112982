"""Span-valued lax-monoidal-lax functors on execution categories.

Sets such as "all multisets over S" are infinite, so a set is described
intensionally by a membership predicate and an enumerator that lists the
elements up to a size bound. A span ``A <- S -> B`` is a tip described the
same way plus two leg functions; for a tip element ``s`` we write
``f(s) = (left(s), right(s))``.

Two semantics are provided:

* :func:`external_comm` sends a collective execution ``f`` to the span of
  all executions with the same transition counts, with the *target* on the
  left and the *source* on the right, so anti-tokens flow backwards;
* :func:`gamma` sends an execution ``f`` of the base of a strict monoidal
  functor ``F`` to the span of executions lying over it (fibres, with
  dom/cod legs). :func:`external_indiv` is ``gamma`` of the counit.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Any, Callable

from . import exec_comm as ec
from . import exec_symm as es
from .bounding import COMM, FREE, FunctorPresentation, bounded_provenance, counit_presentation, erase
from .categories import BoundsTooSmall, EnumeratedCategory, ExecCategory, truncate
from .exec_symm import IN, Box, DiagramError, make_diagram
from .multiset import Multiset, msum
from .net import PetriNet


@dataclass(frozen=True)
class SetDescriptor:
    name: str
    contains: Callable[[Any], bool] = field(repr=False)
    enumerate: Callable[[int], list] = field(repr=False)


@dataclass(frozen=True)
class SpanRep:
    left_set: SetDescriptor
    right_set: SetDescriptor
    contains: Callable[[Any], bool] = field(repr=False)
    enumerate: Callable[[int], list] = field(repr=False)
    left: Callable = field(repr=False)
    right: Callable = field(repr=False)
    name: str = ""

    def legs(self, s) -> tuple:
        return self.left(s), self.right(s)

    def check(self, bound: int) -> list:
        """Enumerated elements violating membership or leaving the leg sets."""
        bad = []
        for s in self.enumerate(bound):
            if not self.contains(s) or not self.left_set.contains(self.left(s)) or not self.right_set.contains(self.right(s)):
                bad.append(s)
        return bad


@dataclass(frozen=True)
class Span2Cell:
    """A map of tips ``source -> target`` that must commute with both legs."""

    source: SpanRep
    target: SpanRep
    map: Callable = field(repr=False)

    def failures(self, elements) -> list:
        bad = []
        for e in elements:
            try:
                img = self.map(e)
            except (ValueError, KeyError) as exc:
                bad.append((e, f"map raised {type(exc).__name__}: {exc}"))
                continue
            if not self.target.contains(img):
                bad.append((e, "image not in target tip"))
            elif self.target.left(img) != self.source.left(e) or self.target.right(img) != self.source.right(e):
                bad.append((e, "legs not respected"))
        return bad


def identity_span(s: SetDescriptor) -> SpanRep:
    return SpanRep(s, s, s.contains, s.enumerate, lambda x: x, lambda x: x, name=f"id({s.name})")


def span_compose(a: SpanRep, b: SpanRep, bound: int | None = None) -> SpanRep:
    """Composite by pullback: pairs ``(x, y)`` with ``a.right(x) == b.left(y)``.

    ``bound`` fixes the enumeration bound of the factors; when None the
    bound passed to ``enumerate`` is used for both.
    """
    def contains(p) -> bool:
        return isinstance(p, tuple) and len(p) == 2 and a.contains(p[0]) and b.contains(p[1]) and a.right(p[0]) == b.left(p[1])

    def enum(k: int) -> list:
        kk = k if bound is None else bound
        by_left: dict = {}
        for y in b.enumerate(kk):
            by_left.setdefault(b.left(y), []).append(y)
        return [(x, y) for x in a.enumerate(kk) for y in by_left.get(a.right(x), ())]

    return SpanRep(a.left_set, b.right_set, contains, enum,
                   lambda p: a.left(p[0]), lambda p: b.right(p[1]), name=f"{a.name};{b.name}")


def span_tensor(a: SpanRep, b: SpanRep, point_tensor: Callable, left_set, right_set) -> SpanRep:
    """Product span: pairs of tip elements, legs combined with ``point_tensor``."""
    def contains(p) -> bool:
        return isinstance(p, tuple) and len(p) == 2 and a.contains(p[0]) and b.contains(p[1])

    def enum(k: int) -> list:
        return list(itertools.product(a.enumerate(k), b.enumerate(k)))

    return SpanRep(left_set, right_set, contains, enum,
                   lambda p: point_tensor(a.left(p[0]), b.left(p[1])),
                   lambda p: point_tensor(a.right(p[0]), b.right(p[1])), name=f"{a.name}x{b.name}")


@dataclass(frozen=True)
class LaxSpanFunctor:
    """A lax-monoidal-lax functor ``base -> Span``.

    The laxators are given pointwise: ``compose_points(s, t)`` for a
    composable pair of tip elements, ``tensor_points(s, t)`` for any pair,
    and ``unit_point(x)`` for the identity on ``x``. ``point_tensor``
    combines elements of the object sets.
    """

    base: ExecCategory
    obj: Callable[[Any], SetDescriptor] = field(repr=False)
    mor: Callable[[Any], SpanRep] = field(repr=False)
    compose_points: Callable = field(repr=False)
    tensor_points: Callable = field(repr=False)
    unit_point: Callable = field(repr=False)
    point_tensor: Callable = field(repr=False)
    point_size: Callable = field(repr=False)
    name: str = "F"

    def comp_laxator(self, f, g) -> Span2Cell:
        return Span2Cell(span_compose(self.mor(f), self.mor(g)), self.mor(self.base.compose(f, g)),
                         lambda p: self.compose_points(*p))

    def mon_laxator(self, f, g) -> Span2Cell:
        src = span_tensor(self.mor(f), self.mor(g), self.point_tensor,
                          self.obj(self.base.obj_tensor(f.dom, g.dom)), self.obj(self.base.obj_tensor(f.cod, g.cod)))
        return Span2Cell(src, self.mor(self.base.tensor(f, g)), lambda p: self.tensor_points(*p))

    def unitor(self, x) -> Span2Cell:
        return Span2Cell(identity_span(self.obj(x)), self.mor(self.base.identity(x)), self.unit_point)


def with_compose_points(F: LaxSpanFunctor, fn: Callable, name: str | None = None) -> LaxSpanFunctor:
    return replace(F, compose_points=fn, name=name or F.name + "'")


def corrupted(F: LaxSpanFunctor) -> LaxSpanFunctor:
    """``F`` with a composition laxator that keeps only the first element,
    ignoring the second one's legs."""
    return with_compose_points(F, lambda s, t: s, name=F.name + "[corrupted]")


# -- external collective semantics ----------------------------------------------

def markings_up_to(net: PetriNet, bound: int) -> list:
    return ExecCategory(net, COMM).objects(bound)


def external_comm(net: PetriNet) -> LaxSpanFunctor:
    """Every object goes to the set of multisets over the places; ``f`` goes
    to ``Msets <-target- chi(f)^-1 -source-> Msets``."""
    places = frozenset(net.places)

    def is_marking(m) -> bool:
        return isinstance(m, Multiset) and m.support() <= places

    msets = SetDescriptor("Msets", is_marking, lambda k: markings_up_to(net, k))

    @lru_cache(maxsize=None)
    def tip(counts: Multiset, k: int) -> tuple:
        out = []
        for y in markings_up_to(net, k):
            out.extend(ec.realizations(net, y, counts))
        return tuple(out)

    def mor(f) -> SpanRep:
        counts = ec.chi(f)

        def contains(g) -> bool:
            return isinstance(g, ec.CommMorphism) and g.net == net and ec.chi(g) == counts

        return SpanRep(msets, msets, contains, lambda k: list(tip(counts, k)),
                       lambda g: g.cod, lambda g: g.dom, name=f"chi^-1({counts})")

    return LaxSpanFunctor(
        base=ExecCategory(net, COMM),
        obj=lambda X: msets,
        mor=mor,
        compose_points=lambda s, t: ec.comm_compose(t, s),
        tensor_points=ec.comm_tensor,
        unit_point=lambda x: ec.comm_identity(net, x),
        point_tensor=msum,
        point_size=lambda X, x: X.size() + x.size(),
        name="Fun_comm",
    )


# -- the Gamma construction ---------------------------------------------------------

def gamma(F: FunctorPresentation, firing_bound: int | None = None, strategy: str = "filter") -> LaxSpanFunctor:
    """Fibres of ``F`` as a lax functor on its target.

    An object ``C`` goes to ``{D | F D = C}`` and a morphism ``f`` to
    ``dom <- {g | F g = f} -> cod``. With ``strategy="filter"`` the tip is
    enumerated by listing morphisms out of every fibre object (with at most
    ``firing_bound`` generators, default: as many as ``f`` has) and keeping
    those mapped to ``f``. ``strategy="lift"`` builds them directly and is
    only available when ``F`` is a counit.
    """
    if strategy not in ("filter", "lift"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "lift" and F.name != "counit":
        raise ValueError("the lift strategy only applies to counit presentations")
    src = ExecCategory(F.source, F.philosophy)
    base = ExecCategory(F.target, F.philosophy)

    @lru_cache(maxsize=None)
    def objects_over(C, k: int) -> tuple:
        if F.name == "counit" and F.philosophy == FREE:
            return tuple(interleavings(C, F.source, k))
        return tuple(D for D in src.objects(k) if F.on_object(D) == C)

    def obj(C) -> SetDescriptor:
        def contains(D) -> bool:
            try:
                return F.on_object(D) == C
            except (KeyError, TypeError):
                return False

        return SetDescriptor(f"fibre({C})", contains, lambda k: list(objects_over(C, k)))

    @lru_cache(maxsize=None)
    def images_from(D, n: int, k: int) -> dict:
        index: dict = {}
        for g in src.homs_from(D, n, max_size=k):
            index.setdefault(F.on_morphism(g), []).append(g)
        return index

    @lru_cache(maxsize=None)
    def tip(f, k: int) -> tuple:
        out = []
        n = base.firings(f) if firing_bound is None else firing_bound
        for D in objects_over(f.dom, k):
            if strategy == "lift":
                out.extend(lift_counit(F, f, D, k))
            else:
                out.extend(images_from(D, n, k).get(f, ()))
        return tuple(sorted(set(out)))

    def mor(f) -> SpanRep:
        def contains(g) -> bool:
            return src.is_morphism(g) and F.on_morphism(g) == f

        return SpanRep(obj(f.dom), obj(f.cod), contains, lambda k: list(tip(f, k)),
                       lambda g: g.dom, lambda g: g.cod, name=f"fibre({f})")

    return LaxSpanFunctor(
        base=base,
        obj=obj,
        mor=mor,
        compose_points=src.compose,
        tensor_points=src.tensor,
        unit_point=src.identity,
        point_tensor=src.obj_tensor,
        point_size=lambda C, D: src.size(D),
        name=f"Gamma({F.name},{strategy})",
    )


def external_indiv(net: PetriNet, strategy: str = "lift") -> LaxSpanFunctor:
    """Individual-token external semantics: ``gamma`` of the counit."""
    return gamma(counit_presentation(net, FREE), strategy=strategy)


def interleavings(X, bnet: PetriNet, bound: int) -> list:
    """Strings over signed places erasing to ``X``, of length at most ``bound``."""
    X = tuple(X)
    if len(X) > bound:
        return []
    anti = [p for p in bnet.places if p.endswith("-")]
    out = []
    for extra in range(bound - len(X) + 1):
        n = len(X) + extra
        for pos in itertools.combinations(range(n), extra):
            for minus in itertools.product(anti, repeat=extra):
                word, it_m, it_p = [], iter(minus), iter(X)
                pset = set(pos)
                for i in range(n):
                    word.append(next(it_m) if i in pset else next(it_p) + "+")
                out.append(tuple(word))
    return sorted(out, key=lambda w: (len(w), w))


def lift_counit(F: FunctorPresentation, f, D, bound: int) -> list:
    """All morphisms ``g`` out of ``D`` with ``F g = f`` and codomain of size
    at most ``bound``, where ``F`` is the counit of a bounded net."""
    if F.philosophy == COMM:
        return [g for g in ec.realizations(F.source, D, ec.chi(f))
                if g.cod.size() <= bound and F.on_morphism(g) == f]
    return _lift_diagram(f, tuple(D), F.source, bound)


def _lift_diagram(f, x: tuple, bnet: PetriNet, bound: int) -> list:
    if erase(x) != tuple(f.inputs):
        return []
    plus_pos = [i for i, l in enumerate(x) if l.endswith("+")]
    boxes, in_port, out_port = [], [], []
    for b in f.boxes:
        t = bnet.transition(b.label)
        pre_prov, post_prov = bounded_provenance(b.ins, b.outs)
        boxes.append(Box(b.label, t.in_word, t.out_word))
        in_port.append({e: j for j, e in enumerate(pre_prov)})
        out_port.append({e: j for j, e in enumerate(post_prov)})
    sources = [((IN, i), l) for i, l in enumerate(x) if l.endswith("-")]
    box_targets = []
    for k, b in enumerate(f.boxes):
        sources += [((k, out_port[k][("-", "in", j)]), b.ins[j] + "-") for j in range(len(b.ins))]
        box_targets += [((k, in_port[k][("-", "out", j)]), b.outs[j] + "-") for j in range(len(b.outs))]
    n_plus = len(f.outputs)
    found = set()

    def plus_target(t, y_plus):
        if t[0] == IN:
            return (IN, y_plus[t[1]])
        return (t[0], in_port[t[0]][("+", "in", t[1])])

    def assignments(i, used):
        if i == len(box_targets):
            yield {}
            return
        tgt, lab = box_targets[i]
        for si, (src, slab) in enumerate(sources):
            if si not in used and slab == lab:
                for rest in assignments(i + 1, used | {si}):
                    yield {**rest, si: tgt}

    for assign in assignments(0, frozenset()):
        rest = [si for si in range(len(sources)) if si not in assign]
        n = n_plus + len(rest)
        if n > bound:
            continue
        for order in itertools.permutations(rest):
            for mpos in itertools.combinations(range(n), len(rest)):
                mset = set(mpos)
                y_plus = [i for i in range(n) if i not in mset]
                y = [None] * n
                for r, i in enumerate(y_plus):
                    y[i] = f.outputs[r] + "+"
                w = {}
                for si, i in zip(order, mpos):
                    y[i] = sources[si][1]
                    w[sources[si][0]] = (IN, i)
                for si, tgt in assign.items():
                    w[sources[si][0]] = tgt
                for r, i in enumerate(plus_pos):
                    w[(IN, i)] = plus_target(f.fwd[(IN, r)], y_plus)
                for k, b in enumerate(f.boxes):
                    for j in range(len(b.outs)):
                        w[(k, out_port[k][("+", "out", j)])] = plus_target(f.fwd[(k, j)], y_plus)
                try:
                    found.add(make_diagram(x, tuple(y), tuple(boxes), w))
                except DiagramError:
                    continue
    return sorted(found)


# -- coherence checking -----------------------------------------------------------

@dataclass
class CoherenceReport:
    functor: str
    samples: int
    checks: dict = field(default_factory=dict)  # check name -> number of instances
    counterexamples: list = field(default_factory=list)  # (check name, detail)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def lines(self) -> list:
        out = [f"{self.functor}: {self.samples} samples, {len(self.counterexamples)} counterexamples"]
        for k, v in self.checks.items():
            bad = sum(1 for c, _ in self.counterexamples if c == k)
            out.append(f"  {'PASS' if not bad else 'FAIL'} {k}: {v} instances, {bad} failures")
        return out


def check_lax_coherence(F: LaxSpanFunctor, sampler: Callable, sample_count: int, seed: int = 0) -> CoherenceReport:
    """Check laxator laws on sampled chains.

    ``sampler(rng)`` returns two chains, each a list of three pairs
    ``(f_i, s_i)`` with ``s_i`` in the tip of ``F f_i``, ``f1 ; f2 ; f3``
    composable in the base and ``right(s_i) == left(s_{i+1})``.
    """
    rng = random.Random(seed)
    rep = CoherenceReport(F.name, sample_count)
    names = ["tip membership", "composition laxator is a 2-cell", "associativity", "left unit", "right unit",
             "monoidal laxator is a 2-cell", "monoidal associativity", "interchange"]
    for n in names:
        rep.checks[n] = 0

    def record(name, ok, detail):
        rep.checks[name] += 1
        if not ok:
            rep.counterexamples.append((name, detail))

    def lax_ok(f, g, s, t):
        cell = F.comp_laxator(f, g)
        bad = cell.failures([(s, t)])
        record("composition laxator is a 2-cell", not bad, (f, g, s, t, bad))
        return not bad

    for _ in range(sample_count):
        chain1, chain2 = sampler(rng)
        for f, s in chain1 + chain2:
            record("tip membership", F.mor(f).contains(s), (f, s))
        (f1, s1), (f2, s2), (f3, s3) = chain1
        (g1, t1), (g2, t2), _ = chain2
        b = F.base
        ok12 = lax_ok(f1, f2, s1, s2)
        ok23 = lax_ok(f2, f3, s2, s3)
        if ok12 and ok23:
            s12 = F.compose_points(s1, s2)
            s23 = F.compose_points(s2, s3)
            if lax_ok(b.compose(f1, f2), f3, s12, s3) and lax_ok(f1, b.compose(f2, f3), s1, s23):
                lhs = F.compose_points(s12, s3)
                rhs = F.compose_points(s1, s23)
                record("associativity", lhs == rhs, (chain1, lhs, rhs))
        u = F.unit_point(F.mor(f1).left(s1))
        record("left unit", F.compose_points(u, s1) == s1, (f1, s1))
        u = F.unit_point(F.mor(f1).right(s1))
        record("right unit", F.compose_points(s1, u) == s1, (f1, s1))
        cell = F.mon_laxator(f1, g1)
        bad = cell.failures([(s1, t1)])
        record("monoidal laxator is a 2-cell", not bad, (f1, g1, s1, t1, bad))
        lhs = F.tensor_points(F.tensor_points(s1, t1), s2)
        rhs = F.tensor_points(s1, F.tensor_points(t1, s2))
        record("monoidal associativity", lhs == rhs, (s1, t1, s2))
        if lax_ok(g1, g2, t1, t2):
            st1 = F.tensor_points(s1, t1)
            st2 = F.tensor_points(s2, t2)
            lhs = F.compose_points(st1, st2)
            rhs = F.tensor_points(F.compose_points(s1, s2), F.compose_points(t1, t2))
            record("interchange", lhs == rhs, (s1, s2, t1, t2))
    return rep


def _random_marking(net: PetriNet, rng: random.Random, size: int) -> Multiset:
    return Multiset(rng.choice(net.places) for _ in range(size)) if net.places else Multiset()


def _random_run(net: PetriNet, start: Multiset, rng: random.Random, length: int) -> tuple:
    m, seq = start, []
    for _ in range(length):
        options = [t for t in net.transitions if t.pre <= m]
        if not options:
            break
        t = rng.choice(options)
        m = msum(m - t.pre, t.post)
        seq.append(t.name)
    return tuple(seq)


def _parallel(net: PetriNet, counts: Multiset, idle: Multiset):
    f = ec.comm_identity(net, idle)
    for u in counts.elements():
        f = ec.comm_tensor(f, ec.comm_generator(net, u))
    return f


def comm_sampler(net: PetriNet, bound: int = 6, max_run: int = 4) -> Callable:
    """Chains for :func:`check_lax_coherence` on :func:`external_comm`.

    A random run is cut into three pieces; run backwards they form a
    composable chain of tip elements. Base morphisms with the same counts
    fire the pieces in parallel next to an idle random marking.
    """
    def chain(rng):
        start = _random_marking(net, rng, rng.randint(0, bound))
        seq = _random_run(net, start, rng, rng.randint(0, max_run))
        cuts = sorted(rng.randint(0, len(seq)) for _ in range(2))
        pieces = [seq[:cuts[0]], seq[cuts[0]:cuts[1]], seq[cuts[1]:]]
        tips, m = [], start
        for p in pieces:
            g = ec.comm_of_sequence(net, p, start=m)
            tips.append(g)
            m = g.cod
        s3, s2, s1 = tips
        counts = [ec.chi(s) for s in (s1, s2, s3)]
        pres = [_pre(net, c) for c in counts]
        idle = _random_marking(net, rng, rng.randint(0, 2))
        f1 = _parallel(net, counts[0], msum(msum(pres[1], pres[2]), idle))
        f2 = _parallel(net, counts[1], msum(msum(_post(net, counts[0]), pres[2]), idle))
        f3 = _parallel(net, counts[2], msum(msum(_post(net, counts[0]), _post(net, counts[1])), idle))
        return [(f1, s1), (f2, s2), (f3, s3)]

    return lambda rng: (chain(rng), chain(rng))


def _pre(net, counts: Multiset) -> Multiset:
    out = Multiset()
    for u, k in counts.items():
        out = msum(out, net.pre(u).scale(k))
    return out


def _post(net, counts: Multiset) -> Multiset:
    out = Multiset()
    for u, k in counts.items():
        out = msum(out, net.post(u).scale(k))
    return out


def random_diagram(net: PetriNet, dom: tuple, rng: random.Random, max_boxes: int, max_len: int | None = None):
    """A random diagram out of ``dom``: generators attached to randomly chosen
    outputs, followed by a random rearrangement."""
    d = es.sym_identity(dom)
    for _ in range(rng.randint(0, max_boxes)):
        moves = []
        for t in net.transitions:
            if max_len is not None and len(d.outputs) - len(t.in_word) + len(t.out_word) > max_len:
                continue
            moves.extend((t, c) for c in es._choices(d.outputs, t.in_word))
        if not moves:
            break
        t, chosen = rng.choice(moves)
        d = es._attach(d, Box(t.name, t.in_word, t.out_word), chosen)
    perm = list(range(len(d.outputs)))
    rng.shuffle(perm)
    return es.sym_compose(d, es.sym_permutation(d.outputs, perm))


def _seeded_string(net: PetriNet, rng: random.Random, bound: int) -> tuple:
    """A random string of length at most ``bound``, usually containing the
    input word of some transition so that it can fire."""
    if not net.places:
        return ()
    word = []
    fits = [t for t in net.transitions if len(t.in_word) <= bound]
    if fits and rng.random() < 0.8:
        word = list(rng.choice(fits).in_word)
    word += [rng.choice(net.places) for _ in range(rng.randint(0, bound - len(word)))]
    rng.shuffle(word)
    return tuple(word)


def gamma_sampler(F: FunctorPresentation, bound: int = 4, max_boxes: int = 1) -> Callable:
    """Chains for :func:`check_lax_coherence` on ``gamma(F)``: random composable
    diagrams ``g1 ; g2 ; g3`` in the source, sent to the base by ``F``."""
    src = F.source

    def chain(rng):
        if F.philosophy == COMM:
            start = _random_marking(src, rng, rng.randint(0, bound))
            seq = _random_run(src, start, rng, rng.randint(0, 3 * max_boxes))
            cuts = sorted(rng.randint(0, len(seq)) for _ in range(2))
            gs, m = [], start
            for p in (seq[:cuts[0]], seq[cuts[0]:cuts[1]], seq[cuts[1]:]):
                g = ec.comm_of_sequence(src, p, start=m)
                gs.append(g)
                m = g.cod
        else:
            x = _seeded_string(src, rng, bound)
            gs = []
            for _ in range(3):
                g = random_diagram(src, x, rng, max_boxes, max_len=bound)
                gs.append(g)
                x = g.outputs
        return [(F.on_morphism(g), g) for g in gs]

    return lambda rng: (chain(rng), chain(rng))


# -- total category -------------------------------------------------------------------

def total_category(F: LaxSpanFunctor, token_bound: int, firing_bound: int) -> EnumeratedCategory:
    """Finite truncation of the category of elements of ``F``.

    Objects are ``(X, x)`` with ``x`` in ``F X`` and ``point_size(X, x)`` at
    most ``token_bound``; morphisms ``(X, x) -> (Y, y)`` are ``(f, s)`` with
    ``f`` in the base truncation and ``s`` in the tip of ``F f`` with
    ``left(s) = x`` and ``right(s) = y``. Composition uses the composition
    laxator; composites falling outside the truncation are recorded in
    ``escapes``.
    """
    base = truncate(F.base, token_bound, firing_bound)
    objects = []
    for X in base.objects:
        for x in F.obj(X).enumerate(token_bound):
            if F.point_size(X, x) <= token_bound:
                objects.append((X, x))
    present = set(objects)
    homs: dict = {}
    for (X, Y), fs in base.homs.items():
        for f in fs:
            span = F.mor(f)
            for s in span.enumerate(token_bound):
                a, b = (X, span.left(s)), (Y, span.right(s))
                if a in present and b in present:
                    homs.setdefault((a, b), []).append((f, s))
    for k in homs:
        homs[k].sort(key=lambda p: (p[0], p[1]))

    def compose(p, q):
        return (F.base.compose(p[0], q[0]), F.compose_points(p[1], q[1]))

    def identity(o):
        return (F.base.identity(o[0]), F.unit_point(o[1]))

    return EnumeratedCategory(objects, homs, compose, identity, name=f"total({F.name})")


def terminal_functor(base: ExecCategory) -> LaxSpanFunctor:
    """Every object to a one-point set and every morphism to the one-point span."""
    one = SetDescriptor("1", lambda x: x == (), lambda k: [()])
    span = SpanRep(one, one, lambda s: s == (), lambda k: [()], lambda s: (), lambda s: (), name="1")
    return LaxSpanFunctor(base, lambda X: one, lambda f: span, lambda s, t: (), lambda s, t: (),
                          lambda x: (), lambda x, y: (), lambda X, x: base.size(X), name="terminal")


__all__ = [
    "BoundsTooSmall", "CoherenceReport", "LaxSpanFunctor", "SetDescriptor", "Span2Cell", "SpanRep",
    "check_lax_coherence", "comm_sampler", "corrupted", "external_comm", "external_indiv", "gamma",
    "gamma_sampler", "identity_span", "interleavings", "lift_counit", "random_diagram", "span_compose",
    "span_tensor", "terminal_functor", "total_category", "with_compose_points",
]
