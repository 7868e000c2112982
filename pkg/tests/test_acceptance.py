"""Acceptance criteria, each timed against its budget.

Every test appends one ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line to ``helpers.ACCEPTANCE_LINES`` (printed at the end of the pytest run)
before asserting. Run this file directly to get the same lines without
pytest's output.
"""

from __future__ import annotations

import random
import sys
import time
from contextlib import contextmanager

import helpers
from boundnets import exec_comm as ec
from boundnets import exec_symm as es
from boundnets.bounding import COMM, FREE, bound_net, check_comonad_laws, counit_presentation, initial_antimarking
from boundnets.equivalence import check_pullback, verify_gamma_round_trip, verify_theorem_comm, verify_theorem_indiv
from boundnets.multiset import Multiset, msum
from boundnets.net import explore, make_net, fire, fire_sequence, is_k_bounded
from boundnets.span_semantics import (
    check_lax_coherence,
    comm_sampler,
    corrupted,
    external_comm,
    external_indiv,
    gamma_sampler,
    random_diagram,
)
from helpers import M0, all_sequences, n0, oracle_swap_class, random_marking, random_net

_witness_cache: dict = {}


@contextmanager
def criterion(n: int, text: str, budget: float):
    """Time the block; record a PASS line when it finishes without failing
    within ``budget`` seconds, a FAIL line otherwise."""
    t0 = time.perf_counter()
    status = {"ok": False}
    try:
        yield status
        status["ok"] = True
    finally:
        dt = time.perf_counter() - t0
        ok = status["ok"] and dt < budget
        helpers.ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {n}: {text} ({dt:.2f} s, budget {budget:g} s)")
    assert dt < budget, f"criterion {n} took {dt:.2f} s"


def _signed_totals(m: Multiset) -> dict:
    out: dict = {}
    for k, v in m.items():
        out[k[:-1]] = out.get(k[:-1], 0) + v
    return out


def test_criterion_1_firing_trace():
    with criterion(1, "N0 trace {a:1,b:1,c:1} -> {c:2} -> {b:2,c:1}", 1):
        trace = fire_sequence(n0(), M0, ["t1", "t2"])
        assert trace == [M0, Multiset({"c": 2}), Multiset({"b": 2, "c": 1})]


def test_criterion_2_conservation():
    rng = random.Random(2)
    firings = 0
    with criterion(2, "m(p+)+m(p-) invariant over 1000 nets x 1000 firings", 30):
        for _ in range(1000):
            net = random_net(rng, 5, 5, 3)
            bn = bound_net(net)

            def fresh():
                # random capacities around a randomly chosen transition, so
                # that at least one firing is possible
                t = rng.choice(net.transitions)
                m0 = Multiset({p: t.pre[p] + rng.randint(0, 3) for p in net.places})
                cap = {p: m0[p] + t.post[p] + rng.randint(0, 3) for p in net.places}
                return initial_antimarking(net, m0, cap)

            m = fresh()
            totals = _signed_totals(m)
            done = 0
            while done < 1000:
                options = [t.name for t in bn.transitions if t.pre <= m]
                if not options:
                    m = fresh()
                    totals = _signed_totals(m)
                    continue
                m = fire(bn, m, rng.choice(options))
                assert _signed_totals(m) == totals
                done += 1
            firings += done
        assert firings == 1_000_000


def test_criterion_3_boundedness():
    rng = random.Random(3)
    with criterion(3, "explore stays within capacities on 100 bounded nets; N0 is 4- but not 3-bounded", 60):
        for _ in range(100):
            net = random_net(rng, 4, 4, 3)
            m0 = random_marking(rng, net.places, 2)
            cap = {p: m0[p] + rng.randint(0, 3) for p in net.places}
            start = initial_antimarking(net, m0, cap)
            g = explore(bound_net(net), start, start.size())
            assert not g.truncated
            for m in g.nodes:
                for p in net.places:
                    assert m[p + "+"] <= cap[p]
        assert is_k_bounded(n0(), M0, 4) is True
        assert is_k_bounded(n0(), M0, 3) is False


def test_criterion_4_comonad_laws():
    rng = random.Random(4)
    with criterion(4, "comonad laws on 100 random nets, both philosophies", 30):
        for _ in range(100):
            net = random_net(rng, 4, 4, 3)
            for ph in (COMM, FREE):
                rep = check_comonad_laws(net, ph)
                assert rep.ok, rep.lines()


def test_criterion_5_chi_homomorphism():
    rng = random.Random(5)
    with criterion(5, "chi(f;g) = chi(f)+chi(g) = chi(f x g) on 1000 pairs, both philosophies", 30):
        done = 0
        while done < 1000:
            net = random_net(rng, 4, 4, 2)
            start = random_marking(rng, net.places, 3)
            seq = tuple(rng.choice(all_sequences(net, start, 4)))
            cut = rng.randint(0, len(seq))
            f = ec.comm_of_sequence(net, seq[:cut], start)
            g = ec.comm_of_sequence(net, seq[cut:], f.cod)
            assert ec.chi(ec.comm_compose(f, g)) == msum(ec.chi(f), ec.chi(g)) == ec.chi(ec.comm_tensor(f, g))
            dom = tuple(rng.choice(net.places) for _ in range(rng.randint(0, 3)))
            d = random_diagram(net, dom, rng, 3, max_len=6)
            e = random_diagram(net, d.cod, rng, 3, max_len=6)
            assert es.chi_sym(es.sym_compose(d, e)) == msum(es.chi_sym(d), es.chi_sym(e)) == es.chi_sym(es.sym_tensor(d, e))
            done += 1


def _check_partition(net, start) -> int:
    seqs = all_sequences(net, start, 4)
    by_morphism: dict = {}
    by_oracle: dict = {}
    for s in seqs:
        by_morphism.setdefault(ec.comm_of_sequence(net, s, start), set()).add(s)
        by_oracle.setdefault(oracle_swap_class(net, start, s), set()).add(s)
    assert sorted(map(sorted, by_morphism.values())) == sorted(map(sorted, by_oracle.values()))
    for cls in by_oracle:
        assert set(cls) <= set(seqs)
    return len(seqs)


def test_criterion_6_collective_equality_oracle():
    rng = random.Random(6)
    with criterion(6, "comm_equal matches the swap-closure oracle on N0 + 20 nets, sequences up to length 4", 120):
        total = _check_partition(n0(), M0)
        for _ in range(20):
            net = random_net(rng, 4, 4, 2)
            total += _check_partition(net, random_marking(rng, net.places, 2))
        assert total > 20


def _example_pictures():
    net = make_net("ABC", {"f": ({"A": 1}, {"B": 1}), "g": ({"B": 1}, {"C": 1})})
    f, g = es.sym_generator(net, "f"), es.sym_generator(net, "g")
    straight = es.sym_tensor(f, g)
    crossed = es.sym_compose(es.sym_compose(es.sym_tensor(f, es.sym_identity("B")), es.sym_symmetry("B", "B")),
                             es.sym_tensor(es.sym_identity("B"), g))
    return net, straight, crossed


def test_criterion_7_fssmc_laws():
    rng = random.Random(7)
    with criterion(7, "interchange, naturality, hexagon, involution on 500 diagrams; crossing example", 60):
        for _ in range(500):
            net = random_net(rng, 3, 3, 2)
            dom = tuple(rng.choice(net.places) for _ in range(rng.randint(0, 3)))
            d = random_diagram(net, dom, rng, 6, max_len=8)
            cut = rng.randint(0, len(d.cod))
            f = random_diagram(net, dom, rng, 3, max_len=6)
            g = random_diagram(net, f.cod, rng, 3, max_len=6)
            h = random_diagram(net, dom[::-1], rng, 3, max_len=6)
            k = random_diagram(net, h.cod, rng, 3, max_len=6)
            assert es.sym_tensor(es.sym_compose(f, g), es.sym_compose(h, k)) == \
                es.sym_compose(es.sym_tensor(f, h), es.sym_tensor(g, k))
            assert es.sym_compose(es.sym_tensor(d, f), es.sym_symmetry(d.cod, f.cod)) == \
                es.sym_compose(es.sym_symmetry(d.dom, f.dom), es.sym_tensor(f, d))
            s, t, u = d.cod[:cut], d.cod[cut:], f.dom
            assert es.sym_symmetry(s + t, u) == es.sym_compose(es.sym_tensor(es.sym_identity(s), es.sym_symmetry(t, u)),
                                                               es.sym_tensor(es.sym_symmetry(s, u), es.sym_identity(t)))
            assert es.sym_compose(es.sym_symmetry(s, t), es.sym_symmetry(t, s)) == es.sym_identity(s + t)
            assert es.sym_compose(d, es.sym_identity(d.cod)) == d
        net, straight, crossed = _example_pictures()
        assert not es.sym_equal(straight, crossed)
        to_comm = [ec.comm_of_sequence(net, es.to_sequence(x), Multiset(x.inputs)) for x in (straight, crossed)]
        assert ec.comm_equal(*to_comm)


def _theorem_indiv():
    if "indiv" not in _witness_cache:
        _witness_cache["indiv"] = verify_theorem_indiv(n0(), 3, 2)
    return _witness_cache["indiv"]


def test_criterion_8_theorem_comm():
    with criterion(8, "verify_theorem_comm(N0, 3, 2) complete", 120):
        w = verify_theorem_comm(n0(), 3, 2)
        assert w.complete, w.lines()
        assert w.counts["objects"] > 0 and w.counts["morphisms"] > 0


def test_criterion_9_theorem_indiv():
    with criterion(9, "verify_theorem_indiv(N0, 3, 2) complete", 300):
        w = _theorem_indiv()
        assert w.complete, w.lines()
        assert w.counts["morphisms"] > 0


def test_criterion_10_pullback():
    with criterion(10, "check_pullback(N0): commutation, joint monicity, comultiplication cone", 60):
        rep = check_pullback(n0())
        assert rep.ok, rep.lines()


def test_criterion_11_lax_coherence():
    with criterion(11, "lax coherence on both semantics with 100 samples; corrupted laxator caught", 60):
        net = n0()
        pairs = [(external_comm(net), comm_sampler(net, bound=6)),
                 (external_indiv(net), gamma_sampler(counit_presentation(net, FREE), bound=4))]
        for F, sampler in pairs:
            rep = check_lax_coherence(F, sampler, 100, seed=11)
            assert rep.ok, rep.lines()
            assert sum(rep.checks.values()) >= 100
            assert not check_lax_coherence(corrupted(F), sampler, 100, seed=11).ok


def test_criterion_12_gamma_round_trip():
    with criterion(12, "total category of fibres of the counit matches FreeB(N0) with the same witness", 300):
        w9 = _theorem_indiv()
        w = verify_gamma_round_trip(counit_presentation(n0(), FREE), 3, 2, strategy="filter", name=w9.name)
        assert w.complete, w.lines()
        assert w.summary() == w9.summary()
        assert w.forward_objects == w9.forward_objects
        assert w.forward == w9.forward and w.backward == w9.backward


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items(), key=lambda kv: int(kv[0].split("_")[2]) if kv[0].startswith("test_criterion") else 0)
             if k.startswith("test_criterion")]
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass
    for line in sorted(helpers.ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
        print(line)
    sys.exit(0 if all(line.startswith("PASS") for line in helpers.ACCEPTANCE_LINES) else 1)
