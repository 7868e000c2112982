import re

from boundnets.bounding import bound_net, signed_marking
from boundnets.dot import export_dot
from boundnets.exec_symm import sym_generator
from boundnets.net import explore, make_net


def counts(text):
    return (len(re.findall(r"shape=circle", text)), len(re.findall(r"shape=box", text)),
            len(re.findall(r"->", text)), len(re.findall(r'fontcolor="red"', text)))


def test_n0(N0, m0):
    text = export_dot(N0, m0)
    assert counts(text) == (3, 2, 6, 0)
    assert 'label="a\\n1"' in text


def test_bounded_n0(N0, m0):
    text = export_dot(bound_net(N0), signed_marking(m0, "+"))
    circles, boxes, arcs, red = counts(text)
    assert (circles, boxes, arcs, red) == (6, 2, 12, 3)


def test_empty_net():
    text = export_dot(make_net("", {}))
    assert counts(text) == (0, 0, 0, 0)
    assert text.startswith("digraph") and text.rstrip().endswith("}")


def test_diagram_and_reachability(N0, m0):
    d = export_dot(sym_generator(bound_net(N0), "t1"))
    assert "shape=record" in d and d.count("->") == 6
    g = export_dot(explore(N0, m0, 10))
    assert g.count("shape=ellipse") == 5


def test_deterministic(N0, m0):
    assert export_dot(N0, m0) == export_dot(N0, m0)
