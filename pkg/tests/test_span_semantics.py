import random

import pytest

from boundnets import exec_comm as ec
from boundnets import exec_symm as es
from boundnets.bounding import COMM, FREE, bound_net, counit_presentation, identity_presentation
from boundnets.categories import ExecCategory, truncate
from boundnets.multiset import Multiset, msum
from boundnets.net import make_net
from boundnets.span_semantics import (
    check_lax_coherence,
    comm_sampler,
    corrupted,
    external_comm,
    external_indiv,
    gamma,
    gamma_sampler,
    identity_span,
    span_compose,
    terminal_functor,
    total_category,
)

# u1 moves a token from p2 to p3, u2 consumes p1 and p3 together
SMALL = make_net(["p1", "p2", "p3"], {"u1": ({"p2": 1}, {"p3": 1}), "u2": ({"p1": 1, "p3": 1}, {})})


def M(d):
    return Multiset(d)


def test_u1_reverses_anti_token_flow():
    F = external_comm(SMALL)
    span = F.mor(ec.comm_generator(SMALL, "u1"))
    tips = span.enumerate(4)
    assert tips and not span.check(4)
    for g in tips:
        x, y = span.legs(g)  # left is the target, right the source
        assert msum(y, M({"p3": 1})) == msum(x, M({"p2": 1}))
    # every ambient marking appears exactly once
    ambient = {g.dom - M({"p2": 1}) for g in tips}
    assert len(ambient) == len(tips) == len(ExecCategory(SMALL, COMM).objects(3))


def test_identity_tip_is_all_identities(N0):
    span = external_comm(N0).mor(ec.comm_identity(N0, M({"a": 1})))
    tips = span.enumerate(3)
    assert len(tips) == len(ExecCategory(N0, COMM).objects(3))
    assert all(span.left(g) == span.right(g) and not g.seq for g in tips)


def test_tip_membership_is_chi(N0, m0):
    f = ec.comm_of_sequence(N0, ("t1", "t2"), m0)
    span = external_comm(N0).mor(f)
    assert span.contains(ec.comm_of_sequence(N0, ("t1", "t2"), M({"a": 1, "b": 1})))
    assert not span.contains(ec.comm_generator(N0, "t1"))
    assert all(ec.chi(g) == ec.chi(f) for g in span.enumerate(4))


def test_span_composition_basics(N0):
    F = external_comm(N0)
    span = F.mor(ec.comm_generator(N0, "t2"))
    both = span_compose(identity_span(F.obj(None)), span)
    # the identity factor only lists left points up to the bound
    expected = [g for g in span.enumerate(3) if span.left(g).size() <= 3]
    assert sorted(p[1] for p in both.enumerate(3)) == sorted(expected)
    empty = F.mor(ec.comm_generator(N0, "t1"))
    none = span_compose(empty, empty)
    assert all(none.contains(p) for p in none.enumerate(2))


def test_gamma_object_fibres(N0):
    F = external_indiv(N0)
    fib = F.obj(("a",)).enumerate(2)
    assert ("a+",) in fib and ("c-", "a+") in fib and ("a+", "c-") in fib
    assert all(w.count("a+") == 1 and len(w) <= 2 for w in fib)
    assert not F.obj(("a",)).contains(("b+",))


def test_gamma_identity_of_unit_is_not_strict(N0):
    F = external_indiv(N0)
    tips = F.mor(es.sym_identity(())).enumerate(2)
    assert es.sym_symmetry(("c-",), ("c-",)) in tips
    assert len(tips) > len(F.obj(()).enumerate(2))


def test_gamma_of_identity_has_singleton_fibres(N0):
    for ph in (COMM, FREE):
        F = gamma(identity_presentation(N0, ph))
        X = M({"a": 1, "c": 1}) if ph == COMM else ("a", "c")
        assert F.obj(X).enumerate(3) == [X]


def test_bounded_generator_lies_over_t1(N0):
    F = external_indiv(N0)
    t1 = es.sym_generator(N0, "t1")
    tips = F.mor(t1).enumerate(3)
    assert es.sym_generator(bound_net(N0), "t1") in tips
    for g in tips:
        assert es.chi_sym(g) == Multiset({"t1": 1})


def test_monoidal_laxator_inclusion(N0):
    F = external_indiv(N0)
    f, g = es.sym_generator(N0, "t2"), es.sym_identity(("a",))
    fg = F.mor(es.sym_tensor(f, g))
    for s in F.mor(f).enumerate(3):
        for t in F.mor(g).enumerate(2):
            assert fg.contains(F.tensor_points(s, t))


@pytest.mark.parametrize("ph", [COMM, FREE])
def test_lift_agrees_with_filter(N0, ph):
    eps = counit_presentation(N0, ph)
    lift, filt = gamma(eps, strategy="lift"), gamma(eps, strategy="filter")
    for _, _, f in truncate(ExecCategory(N0, ph), 2, 1).morphisms():
        assert lift.mor(f).enumerate(3) == filt.mor(f).enumerate(3)


def test_lift_needs_counit(N0):
    with pytest.raises(ValueError):
        gamma(identity_presentation(N0, COMM), strategy="lift")


def test_total_category_objects(N0):
    T = total_category(external_comm(N0), 3, 1)
    assert (M({"a": 1}), M({"c": 2})) in T.objects
    assert T.check_laws(200) == []


def test_terminal_functor_recovers_base(N0):
    base = ExecCategory(N0, COMM)
    T = total_category(terminal_functor(base), 3, 2)
    B = truncate(base, 3, 2)
    assert len(T.objects) == len(B.objects)
    assert T.n_morphisms() == B.n_morphisms()


def test_coherence_collective(N0):
    F = external_comm(N0)
    assert check_lax_coherence(F, comm_sampler(N0), 30, seed=1).ok
    bad = check_lax_coherence(corrupted(F), comm_sampler(N0), 30, seed=1)
    assert not bad.ok


def test_coherence_individual(N0):
    F = external_indiv(N0)
    sampler = gamma_sampler(counit_presentation(N0, FREE))
    rep = check_lax_coherence(F, sampler, 20, seed=2)
    assert rep.ok, rep.lines()
    assert not check_lax_coherence(corrupted(F), sampler, 20, seed=2).ok


def test_coherence_on_small_net():
    rep = check_lax_coherence(external_comm(SMALL), comm_sampler(SMALL), 30, seed=random.Random(5).randint(0, 99))
    assert rep.ok
