"""Graphviz DOT export for nets, diagrams and reachability graphs.

Places are circles labelled with their token count, transitions are boxes,
and an arc of weight k is drawn as k parallel edges. Anti-places (names
ending in ``-``) are drawn in red.
"""

from __future__ import annotations

from .exec_symm import IN, Diagram
from .multiset import Multiset
from .net import PetriNet, ReachabilityGraph

ANTI_STYLE = 'color="red", fontcolor="red"'


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def net_to_dot(net: PetriNet, marking: Multiset | None = None, name: str = "net") -> str:
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;"]
    for p in net.places:
        label = p if marking is None else f"{p}\\n{marking[p]}"
        style = f", {ANTI_STYLE}" if p.endswith("-") else ""
        lines.append(f'  {_q("p:" + p)} [shape=circle, label="{label}"{style}];')
    for t in net.transitions:
        lines.append(f"  {_q('t:' + t.name)} [shape=box, label={_q(t.name)}];")
    for t in net.transitions:
        for p in t.in_word:
            lines.append(f"  {_q('p:' + p)} -> {_q('t:' + t.name)};")
        for p in t.out_word:
            lines.append(f"  {_q('t:' + t.name)} -> {_q('p:' + p)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def diagram_to_dot(d: Diagram, name: str = "diagram") -> str:
    """Boxes as records with one port per wire end; interfaces as ranked rows."""
    lines = [f"digraph {_q(name)} {{", "  rankdir=TB;", "  node [fontsize=10];"]

    def ports(prefix, labels):
        return "|".join(f"<{prefix}{j}> {lab}" for j, lab in enumerate(labels)) or " "

    lines.append("  { rank=source;")
    for i, lab in enumerate(d.inputs):
        lines.append(f"    in{i} [shape=plaintext, label={_q(lab)}];")
    lines.append("  }")
    for k, b in enumerate(d.boxes):
        label = "{{" + ports("i", b.ins) + "}|" + b.label + "|{" + ports("o", b.outs) + "}}"
        lines.append(f"  box{k} [shape=record, label={_q(label)}];")
    lines.append("  { rank=sink;")
    for i, lab in enumerate(d.outputs):
        lines.append(f"    out{i} [shape=plaintext, label={_q(lab)}];")
    lines.append("  }")
    for s, t in d.wiring:
        src = f"in{s[1]}" if s[0] == IN else f"box{s[0]}:o{s[1]}"
        tgt = f"out{t[1]}" if t[0] == IN else f"box{t[0]}:i{t[1]}"
        style = f" [{ANTI_STYLE}]" if d.src_label(s).endswith("-") else ""
        lines.append(f"  {src} -> {tgt}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def reachability_to_dot(g: ReachabilityGraph, name: str = "reachability") -> str:
    index = {m: i for i, m in enumerate(g.nodes)}
    lines = [f"digraph {_q(name)} {{"]
    for m, i in index.items():
        lines.append(f"  m{i} [shape=ellipse, label={_q(str(m))}];")
    for m1, u, m2 in g.edges:
        lines.append(f"  m{index[m1]} -> m{index[m2]} [label={_q(u)}];")
    if g.truncated:
        lines.append(f"  // truncated at {g.bound} tokens")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(obj, marking: Multiset | None = None) -> str:
    if isinstance(obj, PetriNet):
        return net_to_dot(obj, marking)
    if isinstance(obj, Diagram):
        return diagram_to_dot(obj)
    if isinstance(obj, ReachabilityGraph):
        return reachability_to_dot(obj)
    raise TypeError(f"cannot export {type(obj).__name__} to DOT")
