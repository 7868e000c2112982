import random

import pytest
from hypothesis import given, settings, strategies as st

from boundnets.exec_comm import (
    CodDomMismatch,
    InvalidSequence,
    chi,
    comm_compose,
    comm_equal,
    comm_generator,
    comm_identity,
    comm_of_sequence,
    comm_tensor,
    enumerate_comm,
    greedy_layers,
    linearizations,
    realizations,
    replay_layers,
)
from boundnets.multiset import Multiset
from boundnets.net import make_net
from helpers import all_sequences, oracle_swap_class, random_marking, random_net


def M(**kw):
    return Multiset(kw)


def test_identity(N0):
    i = comm_identity(N0, M(a=1))
    assert i.layers == () and i.dom == i.cod == M(a=1)
    assert chi(i) == Multiset()


def test_layers_from_m0(N0, m0):
    assert comm_of_sequence(N0, ("t1", "t2"), m0).layers == (M(t1=1, t2=1),)
    assert comm_of_sequence(N0, ("t2", "t1"), m0).layers == (M(t1=1, t2=1),)


def test_layers_when_t2_waits_for_t1(N0):
    f = comm_of_sequence(N0, ("t1", "t2"), M(a=1, b=1))
    assert f.layers == (M(t1=1), M(t2=1))
    assert greedy_layers(N0, M(a=1, b=1), ("t1", "t2")) == f.layers


def test_invalid_sequence(N0):
    with pytest.raises(InvalidSequence):
        comm_of_sequence(N0, ("t1",), M(c=2))


def test_compose_example(N0, m0):
    f = comm_of_sequence(N0, ("t1",), m0)
    g = comm_of_sequence(N0, ("t2",), M(c=2))
    fg = comm_compose(f, g)
    assert fg.dom == m0 and fg.cod == M(b=2, c=1)
    assert fg.layers == (M(t1=1, t2=1),)
    assert comm_compose(fg, comm_identity(N0, fg.cod)) == fg
    assert comm_compose(comm_identity(N0, m0), fg) == fg
    with pytest.raises(CodDomMismatch):
        comm_compose(f, f)


def test_tensor_examples(N0):
    t1, t2 = comm_generator(N0, "t1"), comm_generator(N0, "t2")
    both = comm_tensor(t1, t2)
    assert both.dom == M(a=1, b=1, c=1) and both.layers == (M(t1=1, t2=1),)
    assert comm_tensor(t2, t1) == both
    assert comm_tensor(t1, comm_identity(N0, Multiset())) == t1


def test_idle_tokens_matter(N0):
    assert comm_generator(N0, "t1") != comm_of_sequence(N0, ("t1",), M(a=1, b=1, c=1))
    assert not comm_equal(comm_identity(N0, M(a=1)), comm_identity(N0, M(b=1)))


def test_disjoint_firings_commute():
    # f: A -> B and g: B -> C acting on separate tokens, in either order
    net = make_net("ABC", {"f": ({"A": 1}, {"B": 1}), "g": ({"B": 1}, {"C": 1})})
    start = M(A=1, B=1)
    assert comm_of_sequence(net, ("f", "g"), start) == comm_of_sequence(net, ("g", "f"), start)


def test_enumerate_n0(N0, m0):
    fs = enumerate_comm(N0, m0, 2)
    assert [f.seq for f in fs] == [(), ("t1",), ("t2",), ("t1", "t2")]
    # oracle: valid sequences of length <= 2 modulo swaps
    classes = {oracle_swap_class(N0, m0, s) for s in all_sequences(N0, m0, 2)}
    assert len(fs) == len(classes) == 4
    assert [f.seq for f in enumerate_comm(N0, m0, 0)] == [()]
    assert [f.seq for f in enumerate_comm(make_net("a", {}), M(a=3), 5)] == [()]


def test_realizations(N0, m0):
    rs = realizations(N0, m0, M(t1=1, t2=1))
    assert len(rs) == 1 and chi(rs[0]) == M(t1=1, t2=1)
    assert realizations(N0, M(c=1), M(t1=1)) == []


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_oracle_agreement_random(seed):
    rng = random.Random(seed)
    net = random_net(rng, 3, 3, 2)
    start = random_marking(rng, net.places, 2)
    seqs = all_sequences(net, start, 3)
    for s in seqs:
        cls = oracle_swap_class(net, start, s)
        assert linearizations(comm_of_sequence(net, s, start)) == cls


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_replay_soundness_and_chi(seed):
    rng = random.Random(seed)
    net = random_net(rng, 3, 3, 2)
    start = random_marking(rng, net.places, 3)
    for s in all_sequences(net, start, 3):
        f = comm_of_sequence(net, s, start)
        assert replay_layers(net, f.dom, f.layers) == f.cod
        assert chi(f) == Multiset(s)


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_interchange(seed):
    rng = random.Random(seed)
    net = random_net(rng, 3, 3, 2)
    a, b = random_marking(rng, net.places, 2), random_marking(rng, net.places, 2)
    sa, sb = rng.choice(all_sequences(net, a, 2)), rng.choice(all_sequences(net, b, 2))
    f = comm_of_sequence(net, sa[:1], a)
    g = comm_of_sequence(net, sa[1:], f.cod)
    h = comm_of_sequence(net, sb[:1], b)
    k = comm_of_sequence(net, sb[1:], h.cod)
    assert comm_tensor(comm_compose(f, g), comm_compose(h, k)) == comm_compose(comm_tensor(f, h), comm_tensor(g, k))
