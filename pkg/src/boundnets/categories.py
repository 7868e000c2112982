"""Uniform access to both execution categories, and finite truncations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from . import exec_comm as ec
from . import exec_symm as es
from .multiset import Multiset, msum
from .net import PetriNet

COMM, FREE = "comm", "free"


class BoundsTooSmall(Exception):
    pass


@dataclass(frozen=True)
class ExecCategory:
    """The collective (``comm``) or individual (``free``) execution category of a net."""

    net: PetriNet
    philosophy: str

    def __post_init__(self):
        if self.philosophy not in (COMM, FREE):
            raise ValueError(f"unknown philosophy {self.philosophy!r}")

    @property
    def is_comm(self) -> bool:
        return self.philosophy == COMM

    def unit(self):
        return Multiset() if self.is_comm else ()

    def obj_tensor(self, x, y):
        return msum(x, y) if self.is_comm else tuple(x) + tuple(y)

    def size(self, x) -> int:
        return x.size() if self.is_comm else len(x)

    def objects(self, bound: int) -> list:
        places = self.net.places
        out = []
        for n in range(bound + 1):
            if self.is_comm:
                out.extend(Multiset(c) for c in itertools.combinations_with_replacement(places, n))
            else:
                out.extend(itertools.product(places, repeat=n))
        return out

    def identity(self, x):
        return ec.comm_identity(self.net, x) if self.is_comm else es.sym_identity(x)

    def generator(self, u: str):
        return ec.comm_generator(self.net, u) if self.is_comm else es.sym_generator(self.net, u)

    def compose(self, f, g):
        return ec.comm_compose(f, g) if self.is_comm else es.sym_compose(f, g)

    def tensor(self, f, g):
        return ec.comm_tensor(f, g) if self.is_comm else es.sym_tensor(f, g)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def chi(self, f) -> Multiset:
        return ec.chi(f) if self.is_comm else es.chi_sym(f)

    def firings(self, f) -> int:
        return self.chi(f).size()

    def homs_from(self, x, max_firings: int, max_size: int | None = None) -> list:
        if self.is_comm:
            out = ec.enumerate_comm(self.net, x, max_firings)
            if max_size is not None:
                out = [f for f in out if f.cod.size() <= max_size]
            return out
        return es.enumerate_sym(self.net, tuple(x), max_firings, max_outputs=max_size)

    def is_morphism(self, f) -> bool:
        if self.is_comm:
            return isinstance(f, ec.CommMorphism) and f.net == self.net
        if not isinstance(f, es.Diagram):
            return False
        names = set(self.net.transition_names)
        return all(b.label in names and (b.ins, b.outs) == (self.net.transition(b.label).in_word, self.net.transition(b.label).out_word) for b in f.boxes)


@dataclass
class EnumeratedCategory:
    """A finite truncation: listed objects and hom-sets, with composition.

    Composites that leave the truncation are recorded in ``escapes`` rather
    than treated as errors.
    """

    objects: list
    homs: dict
    compose: Callable
    identity: Callable
    name: str = ""
    escapes: list = field(default_factory=list)

    def hom(self, a, b) -> list:
        return self.homs.get((a, b), [])

    def morphisms(self):
        for (a, b), fs in self.homs.items():
            for f in fs:
                yield a, b, f

    def n_morphisms(self) -> int:
        return sum(len(v) for v in self.homs.values())

    def _member(self, a, b, f) -> bool:
        if not hasattr(self, "_sets"):
            self._sets = {k: set(v) for k, v in self.homs.items()}
        return f in self._sets.get((a, b), ())

    def check_laws(self, max_triples: int = 20000) -> list:
        """Unit and associativity laws on the table; returns failures."""
        bad = []
        for a, b, f in self.morphisms():
            if self.compose(self.identity(a), f) != f or self.compose(f, self.identity(b)) != f:
                bad.append(("unit", f))
        count = 0
        out_of = {}
        for a, b, f in self.morphisms():
            out_of.setdefault(a, []).append((b, f))
        for a, b, f in self.morphisms():
            for c, g in out_of.get(b, ()):
                fg = self.compose(f, g)
                if not self._member(a, c, fg):
                    self.escapes.append((f, g))
                    continue
                for d, h in out_of.get(c, ()):
                    count += 1
                    if count > max_triples:
                        return bad
                    if self.compose(fg, h) != self.compose(f, self.compose(g, h)):
                        bad.append(("assoc", (f, g, h)))
        return bad


def truncate(cat: ExecCategory, token_bound: int, firing_bound: int) -> EnumeratedCategory:
    """Objects of size at most ``token_bound``; morphisms between them with at
    most ``firing_bound`` generator occurrences."""
    if token_bound < 0 or firing_bound < 0:
        raise ValueError("bounds must be non-negative")
    objs = cat.objects(token_bound)
    homs: dict = {}
    for x in objs:
        for f in cat.homs_from(x, firing_bound, max_size=token_bound):
            homs.setdefault((x, cat.cod(f)), []).append(f)
    for k in homs:
        homs[k].sort()
    return EnumeratedCategory(objs, homs, cat.compose, cat.identity, name=f"{cat.philosophy}({token_bound},{firing_bound})")
