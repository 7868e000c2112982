"""Matching internal and external bound semantics on finite truncations.

The internal side is the execution category of the bounded net; the
external side is the total category of a span-valued semantics. A candidate
isomorphism is given by explicit object and morphism maps in both
directions, and :func:`match_categories` checks, hom-set by hom-set, that
they are mutually inverse bijections preserving identities, composition and
the tensor of objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import exec_comm as ec
from . import exec_symm as es
from .bounding import (
    COMM,
    FREE,
    FunctorPresentation,
    bound_net,
    bound_presentation,
    comult_presentation,
    compose_presentations,
    counit_presentation,
    presentation_differences,
    signed_marking,
    split_marking,
    symmetric_differences,
)
from .categories import EnumeratedCategory, ExecCategory, truncate
from .multiset import msum
from .net import PetriNet
from .span_semantics import LaxSpanFunctor, external_comm, gamma, total_category


def truncate_exec(net: PetriNet | ExecCategory, token_bound: int, firing_bound: int, philosophy: str = COMM) -> EnumeratedCategory:
    cat = net if isinstance(net, ExecCategory) else ExecCategory(net, philosophy)
    return truncate(cat, token_bound, firing_bound)


@dataclass
class IsoWitness:
    """Object and morphism maps between a total category (``external``) and
    an execution category (``internal``), with the outcome of every check."""

    name: str
    forward_objects: dict  # external object -> internal object
    backward_objects: dict
    forward: dict  # external morphism -> internal morphism
    backward: dict
    report: dict  # check name -> list of failures
    counts: dict = field(default_factory=dict)
    hom_sizes: tuple = ()

    @property
    def complete(self) -> bool:
        return all(not v for v in self.report.values())

    def summary(self) -> tuple:
        return (tuple(sorted(self.counts.items())), self.hom_sizes,
                tuple((k, len(v)) for k, v in self.report.items()))

    def lines(self) -> list:
        c = self.counts
        out = [f"{self.name}: {'PASS' if self.complete else 'FAIL'}",
               f"  objects matched: {c.get('objects', 0)}",
               f"  non-empty hom-sets matched: {c.get('hom-sets', 0)}",
               f"  morphisms matched: {c.get('morphisms', 0)}",
               f"  composites checked: {c.get('composites', 0)} (outside the truncation: {c.get('escapes', 0)})"]
        for k, v in self.report.items():
            out.append(f"  {'PASS' if not v else 'FAIL'} {k}" + (f": {len(v)} failures" if v else ""))
        return out


def match_categories(name: str, internal: EnumeratedCategory, external: EnumeratedCategory,
                     obj_fwd: Callable, obj_bwd: Callable, mor_fwd: Callable, mor_bwd: Callable,
                     tensor_int: Callable | None = None, tensor_ext: Callable | None = None) -> IsoWitness:
    report = {k: [] for k in ("objects", "hom-sets", "inverse", "identities", "composition", "tensor of objects")}
    fo, bo, fm, bm = {}, {}, {}, {}
    int_objs = set(internal.objects)
    for a in external.objects:
        fo[a] = obj_fwd(a)
        if fo[a] not in int_objs:
            report["objects"].append(("not an internal object", a))
    for p in internal.objects:
        bo[p] = obj_bwd(p)
    if len(set(fo.values())) != len(fo):
        report["objects"].append(("forward object map not injective", None))
    if len(internal.objects) != len(external.objects):
        report["objects"].append(("object counts differ", (len(internal.objects), len(external.objects))))
    for a, p in fo.items():
        if bo.get(p) != a:
            report["inverse"].append(("objects", a))

    keys = {(fo.get(a, a), fo.get(b, b)) for a, b in external.homs} | set(internal.homs)
    hom_sizes = []
    n_mor = 0
    for p, q in sorted(keys, key=repr):
        a, b = bo.get(p), bo.get(q)
        ext = external.hom(a, b) if a is not None and b is not None else []
        ints = internal.hom(p, q)
        hom_sizes.append((repr((p, q)), len(ints), len(ext)))
        images = []
        for e in ext:
            g = mor_fwd(e)
            fm[e] = g
            images.append(g)
            if g is None or g not in ints:
                report["hom-sets"].append(("image outside the hom-set", e))
        for g in ints:
            e = mor_bwd(g)
            bm[g] = e
            if e not in ext:
                report["hom-sets"].append(("preimage outside the hom-set", g))
            elif fm.get(e) != g:
                report["inverse"].append(("morphisms", g))
        if len(set(images)) != len(images) or len(ints) != len(ext):
            report["hom-sets"].append(("not a bijection", (p, q, len(ints), len(ext))))
        n_mor += len(ext)

    for a in external.objects:
        if mor_fwd(external.identity(a)) != internal.identity(fo[a]):
            report["identities"].append(a)

    members = {k: set(v) for k, v in external.homs.items()}
    out_of: dict = {}
    for (a, b), fs in external.homs.items():
        out_of.setdefault(a, []).extend((b, f) for f in fs)
    composites = escapes = 0
    for (a, b), fs in external.homs.items():
        for f in fs:
            for c, g in out_of.get(b, ()):
                fg = external.compose(f, g)
                if fg not in members.get((a, c), ()):
                    escapes += 1
                    continue
                composites += 1
                if fm.get(f) is None or fm.get(g) is None:
                    continue  # already reported as a hom-set failure
                if fm.get(fg) != internal.compose(fm[f], fm[g]):
                    report["composition"].append((f, g))

    if tensor_int and tensor_ext:
        present = set(external.objects)
        for a in external.objects:
            for b in external.objects:
                ab = tensor_ext(a, b)
                if ab in present and fo[ab] != tensor_int(fo[a], fo[b]):
                    report["tensor of objects"].append((a, b))

    counts = {"objects": len(fo), "hom-sets": sum(1 for _, i, e in hom_sizes if i or e),
              "morphisms": n_mor, "composites": composites, "escapes": escapes}
    return IsoWitness(name, fo, bo, fm, bm, report, counts, tuple(hom_sizes))


# -- collective tokens -----------------------------------------------------------------

def comm_object_map(o) -> object:
    X, x = o
    return msum(signed_marking(X, "+"), signed_marking(x, "-"))


def comm_pair_of(net: PetriNet, g: ec.CommMorphism) -> tuple:
    """Split an execution of the bounded net into the execution of the
    underlying net and the backwards run of anti-tokens."""
    X, _ = split_marking(g.dom)
    _, y = split_marking(g.cod)
    f = ec.comm_of_sequence(net, g.seq, start=X)
    s = ec.comm_of_sequence(net, tuple(reversed(g.seq)), start=y)
    return f, s


def comm_bounded_of(net: PetriNet, bnet: PetriNet, pair) -> ec.CommMorphism | None:
    """The execution of the bounded net projecting to ``pair = (f, s)``, or
    None when there is not exactly one."""
    f, s = pair
    dom = comm_object_map((f.dom, s.cod))
    hits = [g for g in ec.realizations(bnet, dom, ec.chi(f)) if comm_pair_of(net, g) == (f, s)]
    return hits[0] if len(hits) == 1 else None


def verify_theorem_comm(net: PetriNet, token_bound: int = 3, firing_bound: int = 2) -> IsoWitness:
    """Executions of the bounded net against the total category of
    :func:`external_comm`, with ``(X, x) -> X+ + x-``."""
    bnet = bound_net(net)
    internal = truncate_exec(ExecCategory(bnet, COMM), token_bound, firing_bound)
    external = total_category(external_comm(net), token_bound, firing_bound)
    return match_categories(
        f"collective tokens, token bound {token_bound}, firing bound {firing_bound}",
        internal, external,
        comm_object_map,
        split_marking,
        lambda p: comm_bounded_of(net, bnet, p),
        lambda g: comm_pair_of(net, g),
        tensor_int=msum,
        tensor_ext=lambda a, b: (msum(a[0], b[0]), msum(a[1], b[1])),
    )


# -- individual tokens / fibres ------------------------------------------------------------

def verify_gamma_round_trip(F: FunctorPresentation, token_bound: int, firing_bound: int,
                            strategy: str = "filter", name: str | None = None) -> IsoWitness:
    """The total category of ``gamma(F)`` against the source of ``F``, with
    ``(C, D) -> D`` and ``(f, g) -> g``."""
    internal = truncate_exec(ExecCategory(F.source, F.philosophy), token_bound, firing_bound)
    G = gamma(F, strategy=strategy)
    external = total_category(G, token_bound, firing_bound)
    cat = ExecCategory(F.source, F.philosophy)
    return match_categories(
        name or f"fibres of {F.name} ({strategy}), token bound {token_bound}, firing bound {firing_bound}",
        internal, external,
        lambda o: o[1],
        lambda D: (F.on_object(D), D),
        lambda p: p[1],
        lambda g: (F.on_morphism(g), g),
        tensor_int=cat.obj_tensor,
        tensor_ext=lambda a, b: (G.base.obj_tensor(a[0], b[0]), cat.obj_tensor(a[1], b[1])),
    )


def verify_theorem_indiv(net: PetriNet, token_bound: int = 3, firing_bound: int = 2, strategy: str = "lift") -> IsoWitness:
    """Executions of the bounded net (individual tokens) against the total
    category of the external individual-token semantics."""
    return verify_gamma_round_trip(
        counit_presentation(net, FREE), token_bound, firing_bound, strategy=strategy,
        name=f"individual tokens, token bound {token_bound}, firing bound {firing_bound}")


# -- pullback ---------------------------------------------------------------------------------

@dataclass
class PullbackReport:
    checks: dict = field(default_factory=dict)  # name -> list of failures
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(not v for v in self.checks.values())

    def lines(self) -> list:
        out = ["pullback: " + ("PASS" if self.ok else "FAIL")]
        for k, v in self.checks.items():
            n = self.counts.get(k)
            extra = f" ({n} instances)" if n is not None else ""
            out.append(f"  {'PASS' if not v else 'FAIL'} {k}{extra}" + (f": {len(v)} failures" if v else ""))
        return out


def _cells(cat: EnumeratedCategory) -> list:
    return [f for _, _, f in cat.morphisms()]


def _sign_sorted(x: tuple) -> tuple:
    return tuple(l for l in x if l.endswith("+")) + tuple(l for l in x if l.endswith("-"))


def check_pullback(net: PetriNet, token_bound: int = 3, firing_bound: int = 2) -> PullbackReport:
    """Bounded executions as the pullback of pointed spans along the external
    semantics, with projections the counit and ``g -> (Fun(eps g), g)``.

    Checks commutation of the square, joint monicity of the projections,
    that every compatible pair is hit, and unique factorization of a battery
    of cones: the identity cone, a cone conjugated by symmetries, the cone
    defining the comultiplication, and the constant cone at the unit.
    """
    bnet = bound_net(net)
    eps = counit_presentation(net, FREE)
    fun = gamma(eps, strategy="lift")
    A = truncate_exec(ExecCategory(bnet, FREE), token_bound, firing_bound)
    base = truncate_exec(ExecCategory(net, FREE), token_bound, firing_bound)
    cells = _cells(A)
    rep = PullbackReport()

    def check(name, items, pred):
        bad = [c for c in items if not pred(c)]
        rep.checks[name] = bad
        rep.counts[name] = len(items)

    # (i) eps ; Fun and Q ; U agree: the point of Q(g) lies in Fun(eps g) over the right ends
    check("square commutes on objects", list(A.objects), lambda x: fun.obj(eps.on_word(x)).contains(x))
    check("square commutes on morphisms", cells,
          lambda g: fun.mor(eps.on_morphism(g)).contains(g) and fun.mor(eps.on_morphism(g)).legs(g) == (g.dom, g.cod))

    # (ii) joint monicity, and every compatible pair (f, s) comes from a cell
    keys = [(eps.on_morphism(g), g) for g in cells]
    rep.checks["projections jointly monic"] = [] if len(set(keys)) == len(keys) else ["collision"]
    rep.counts["projections jointly monic"] = len(keys)
    keyset = set(keys)
    pairs = [(f, s) for f in _cells(base) for s in fun.mor(f).enumerate(token_bound)
             if len(s.boxes) <= firing_bound]
    check("compatible pairs are hit", pairs, lambda p: p in keyset)

    # (iii) cones (C, P, R). Joint monicity forces the filler to be the point
    # of R; it remains to see that this point lies over P and is a functor.
    def cone(name, c_cells, c_pairs, P, R, target_cells, eps_t, compose_c, compose_t):
        tset = set(target_cells) if target_cells is not None else None
        bad = []
        for c in c_cells:
            h = R(c)
            if eps_t(h) != P(c):
                bad.append((c, "filler does not lie over P"))
            elif tset is not None and h not in tset:
                bad.append((c, "filler leaves the truncation"))
        for c1, c2 in c_pairs:
            if R(compose_c(c1, c2)) != compose_t(R(c1), R(c2)):
                bad.append(((c1, c2), "filler does not preserve composition"))
        rep.checks[f"cone '{name}' factors uniquely"] = bad
        rep.counts[f"cone '{name}' factors uniquely"] = len(c_cells) + len(c_pairs)

    pairs_A = _composable_pairs(A)
    cone("identity", cells, pairs_A, eps.on_morphism, lambda g: g, cells, eps.on_morphism, es.sym_compose, es.sym_compose)

    def conj(g):
        return es.sym_compose(es.sym_compose(es.permutation_between(_sign_sorted(g.dom), g.dom), g),
                              es.permutation_between(g.cod, _sign_sorted(g.cod)))

    conj_cells = [g for g in cells if _sign_sorted(g.dom) in set(A.objects) and _sign_sorted(g.cod) in set(A.objects)]
    cone("conjugated by symmetries", conj_cells, pairs_A, eps.on_morphism, conj, cells, eps.on_morphism,
         es.sym_compose, es.sym_compose)
    moved = sum(1 for g in conj_cells if conj(g) != g)
    rep.counts["cells moved by the conjugated cone"] = moved

    d = comult_presentation(net, FREE)
    eps_b = counit_presentation(bnet, FREE)
    cone("comultiplication", cells, pairs_A, lambda g: g, d.on_morphism, None, eps_b.on_morphism,
         es.sym_compose, es.sym_compose)
    fun_b = gamma(eps_b, strategy="lift")
    check("comultiplication lands in the external semantics of the bounded net", cells,
          lambda g: fun_b.mor(g).contains(d.on_morphism(g)))

    unit_id = es.sym_identity(())
    cone("constant at the unit", [unit_id], [(unit_id, unit_id)], eps.on_morphism, lambda g: g, cells,
         eps.on_morphism, es.sym_compose, es.sym_compose)

    # the comultiplication equations, generator by generator
    bbnet = bound_net(bnet)
    e2 = counit_presentation(bbnet, FREE)
    lhs = compose_presentations(compose_presentations(d, comult_presentation(bnet, FREE)), e2)
    rhs = compose_presentations(compose_presentations(d, bound_presentation(d)), e2)
    rep.checks["comultiplication equations (up to canonical symmetry)"] = symmetric_differences(lhs, rhs)
    rep.counts["comultiplication equations strict differences"] = len(presentation_differences(lhs, rhs))
    return rep


def _composable_pairs(cat: EnumeratedCategory) -> list:
    out_of: dict = {}
    for a, b, f in cat.morphisms():
        out_of.setdefault(a, []).append((b, f))
    members = {k: set(v) for k, v in cat.homs.items()}
    pairs = []
    for a, b, f in cat.morphisms():
        for c, g in out_of.get(b, ()):
            if cat.compose(f, g) in members.get((a, c), ()):
                pairs.append((f, g))
    return pairs


# -- morphisms of semantics --------------------------------------------------------------

def _profile_obj(sem: LaxSpanFunctor, X, bound: int) -> list:
    return sorted(sem.point_size(X, x) for x in sem.obj(X).enumerate(bound))


def _profile_mor(sem: LaxSpanFunctor, f, bound: int) -> list:
    span = sem.mor(f)
    return sorted((sem.point_size(f.dom, span.left(s)), sem.point_size(f.cod, span.right(s)))
                  for s in span.enumerate(bound))


def check_semantics_morphism(F: FunctorPresentation, semN: LaxSpanFunctor, semM: LaxSpanFunctor,
                             samples: Iterable | int = 20, bound: int = 3) -> bool:
    """Whether ``semN`` agrees with ``F`` followed by ``semM`` on samples.

    Fibres are compared up to the canonical identification of their
    elements, i.e. by the sizes of points and of leg values. ``samples`` is
    a list of objects and morphisms of the source, or a number of cells to
    take from a small truncation.
    """
    if isinstance(samples, int):
        trunc = truncate_exec(ExecCategory(F.source, F.philosophy), 2, 1)
        cells = list(trunc.objects) + _cells(trunc)
        samples = cells[:samples] + cells[-samples:]
    for c in samples:
        if isinstance(c, (ec.CommMorphism, es.Diagram)):
            if _profile_mor(semN, c, bound) != _profile_mor(semM, F.on_morphism(c), bound):
                return False
        elif _profile_obj(semN, c, bound) != _profile_obj(semM, F.on_object(c), bound):
            return False
    return True


__all__ = [
    "IsoWitness", "PullbackReport", "check_pullback", "check_semantics_morphism", "comm_bounded_of",
    "comm_object_map", "comm_pair_of", "match_categories", "truncate_exec", "verify_gamma_round_trip",
    "verify_theorem_comm", "verify_theorem_indiv",
]
