"""Command-line interface.

Exit status: 0 when every check passes, 1 when some check fails, 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import exec_comm as ec
from . import exec_symm as es
from .bounding import COMM, FREE, bound_net, check_comonad_laws, counit_presentation, initial_antimarking, signed_marking
from .dot import export_dot
from .equivalence import check_pullback, verify_theorem_comm, verify_theorem_indiv
from .multiset import MultisetParseError, parse_multiset
from .net import NetError, NotEnabled, dumps_net, explore, fire_sequence, is_k_bounded, load_net
from .span_semantics import (
    check_lax_coherence,
    comm_sampler,
    corrupted,
    external_comm,
    external_indiv,
    gamma_sampler,
)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_capacity(items) -> dict:
    caps = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not value.strip().isdigit():
            raise UsageError(f"bad capacity {item!r}, expected place=k")
        caps[name.strip()] = int(value)
    return caps


def parse_morphism(text: str, philosophy: str):
    """``dom | u1 ; u2 ; ...``. The domain is a multiset such as ``{a:1, b:1}``
    for collective tokens and a space separated string such as ``a b`` for
    individual tokens."""
    dom_text, sep, body = text.partition("|")
    if not sep:
        raise UsageError(f"morphism {text!r} lacks a '|' after its domain")
    seq = tuple(u.strip() for u in body.split(";") if u.strip())
    if philosophy == COMM:
        return parse_multiset(dom_text.strip()), seq
    word = dom_text.strip().strip("[]").replace(",", " ").split()
    return tuple(word), seq


def diagram_of_sequence(net, dom: tuple, seq: tuple) -> es.Diagram:
    """Fire ``seq`` on ``dom``, each occurrence taking the leftmost free
    wires with the right labels and appending its outputs on the right."""
    d = es.sym_identity(dom)
    for u in seq:
        t = net.transition(u)
        choice = next(es._choices(d.outputs, t.in_word), None)
        if choice is None:
            raise NotEnabled(f"{u} is not enabled at {list(d.outputs)}")
        d = es._attach(d, es.Box(t.name, t.in_word, t.out_word), choice)
    return d


def _load(path: str, allow_signed: bool = False):
    return load_net(path, allow_signed=allow_signed)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bound(args) -> int:
    net, m0 = _load(args.net)
    bnet = bound_net(net)
    caps = parse_capacity(args.capacity)
    if caps:
        marking = initial_antimarking(net, m0, caps)
    else:
        marking = signed_marking(m0, "+")
    _emit(dumps_net(bnet, marking) + "\n", args.output)
    return OK


def cmd_simulate(args) -> int:
    net, m0 = _load(args.net, allow_signed=True)
    if args.marking is not None:
        m0 = parse_multiset(args.marking)
        net.check_marking(m0)
    try:
        trace = fire_sequence(net, m0, args.fire or [])
    except NotEnabled as e:
        print(f"not enabled: {e}")
        return FAILED
    for i, m in enumerate(trace):
        step = "" if i == 0 else f" after {args.fire[i - 1]}"
        print(f"{i} {m}{step}")
    return OK


def cmd_explore(args) -> int:
    net, m0 = _load(args.net, allow_signed=True)
    if args.marking is not None:
        m0 = parse_multiset(args.marking)
        net.check_marking(m0)
    g = explore(net, m0, args.max_tokens)
    print(f"nodes: {len(g.nodes)}")
    print(f"edges: {len(g.edges)}")
    print(f"truncated: {'yes (at ' + str(g.bound) + ' tokens)' if g.truncated else 'no'}")
    for m in g.nodes:
        print(f"  {m}")
    if args.dot:
        _emit(export_dot(g), args.dot)
    status = OK
    if args.k_bounded is not None:
        res = is_k_bounded(net, m0, args.k_bounded)
        print(f"{args.k_bounded}-bounded: {'unknown' if res is None else str(res).lower()}")
        if res is not True:
            status = FAILED
    return status


def _morphism(net, text, philosophy):
    dom, seq = parse_morphism(text, philosophy)
    if philosophy == COMM:
        net.check_marking(dom)
        return ec.comm_of_sequence(net, seq, start=dom)
    for p in dom:
        if p not in net.places:
            raise NetError(f"unknown place {p!r}")
    return diagram_of_sequence(net, dom, seq)


def cmd_chi(args) -> int:
    net, _ = _load(args.net, allow_signed=True)
    philosophy = COMM if args.philosophy == "comm" else FREE
    try:
        f = _morphism(net, args.morphism, philosophy)
    except (ec.InvalidSequence, NotEnabled) as e:
        print(f"invalid: {e}")
        return FAILED
    counts = ec.chi(f) if philosophy == COMM else es.chi_sym(f)
    print(f"chi: {counts}")
    if philosophy == COMM:
        print(f"dom: {f.dom}")
        print(f"cod: {f.cod}")
        print(f"normal form: {' ; '.join(f.seq)}")
    else:
        print(f"dom: {' '.join(f.dom)}")
        print(f"cod: {' '.join(f.cod)}")
    return OK


def cmd_semantics(args) -> int:
    net, _ = _load(args.net)
    philosophy = COMM if args.philosophy == "comm" else FREE
    try:
        f = _morphism(net, args.morphism, philosophy)
    except (ec.InvalidSequence, NotEnabled) as e:
        print(f"invalid: {e}")
        return FAILED
    if philosophy == COMM:
        span = external_comm(net).mor(f)
        tips = span.enumerate(args.bound)
        print(f"tip of {f}: {len(tips)} elements up to size {args.bound} (left = target, right = source)")
        for s in tips:
            print(f"  {span.left(s)} <- [{s}] -> {span.right(s)}")
    else:
        span = external_indiv(net).mor(f)
        tips = span.enumerate(args.bound)
        print(f"tip over {' '.join(f.dom)} -> {' '.join(f.cod)}: {len(tips)} elements up to length {args.bound} (left = dom, right = cod)")
        for s in tips:
            print(f"  {' '.join(span.left(s)) or 'I'} <- [{' ; '.join(es.to_sequence(s))}] -> {' '.join(span.right(s)) or 'I'}")
    return OK


def cmd_check_comonad(args) -> int:
    net, _ = _load(args.net)
    phils = [COMM, FREE] if args.philosophy == "both" else [COMM if args.philosophy == "comm" else FREE]
    status = OK
    for ph in phils:
        rep = check_comonad_laws(net, ph)
        print(f"[{ph}]")
        for line in rep.lines():
            print(f"  {line}")
        if not rep.ok:
            status = FAILED
    return status


def cmd_verify(args) -> int:
    net, _ = _load(args.net)
    if args.philosophy == "comm":
        w = verify_theorem_comm(net, args.token_bound, args.firing_bound)
    else:
        w = verify_theorem_indiv(net, args.token_bound, args.firing_bound)
    for line in w.lines():
        print(line)
    status = OK if w.complete else FAILED
    if args.pullback:
        rep = check_pullback(net, args.token_bound, args.firing_bound)
        for line in rep.lines():
            print(line)
        if not rep.ok:
            status = FAILED
    if args.coherence:
        if args.philosophy == "comm":
            F, sampler = external_comm(net), comm_sampler(net)
        else:
            F, sampler = external_indiv(net), gamma_sampler(counit_presentation(net, FREE))
        rep = check_lax_coherence(F, sampler, args.coherence, seed=args.seed)
        for line in rep.lines():
            print(line)
        control = check_lax_coherence(corrupted(F), sampler, args.coherence, seed=args.seed)
        print(f"negative control caught: {'yes' if not control.ok else 'no'}")
        if not rep.ok or control.ok:
            status = FAILED
    return status


def cmd_export_dot(args) -> int:
    net, m0 = _load(args.net, allow_signed=True)
    if args.bounded:
        net, m0 = bound_net(net), signed_marking(m0, "+")
    if args.reachability is not None:
        text = export_dot(explore(net, m0, args.reachability))
    else:
        text = export_dot(net, m0)
    _emit(text, args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boundnets", description="Bounded Petri nets and their categorical semantics.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("bound", help="write the bounded net")
    s.add_argument("net")
    s.add_argument("--capacity", action="append", metavar="PLACE=K", help="capacity of a place (repeatable)")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_bound)

    s = sub.add_parser("simulate", help="fire a sequence of transitions")
    s.add_argument("net")
    s.add_argument("--fire", action="append", metavar="T")
    s.add_argument("--marking", help="start marking, e.g. '{a:1, b:1}'")
    s.set_defaults(run=cmd_simulate)

    s = sub.add_parser("explore", help="reachable markings up to a token bound")
    s.add_argument("net")
    s.add_argument("--max-tokens", type=int, default=10)
    s.add_argument("--marking")
    s.add_argument("--k-bounded", type=int, metavar="K")
    s.add_argument("--dot", metavar="FILE")
    s.set_defaults(run=cmd_explore)

    for verb, fn, helptext in (("chi", cmd_chi, "transition counts of a morphism"),
                               ("semantics", cmd_semantics, "external semantics of a morphism")):
        s = sub.add_parser(verb, help=helptext)
        s.add_argument("net")
        s.add_argument("morphism", help="'dom | u1 ; u2 ; ...'")
        s.add_argument("--philosophy", choices=["comm", "indiv"], default="comm")
        if verb == "semantics":
            s.add_argument("--bound", type=int, default=3)
        s.set_defaults(run=fn)

    s = sub.add_parser("check-comonad", help="comonad laws of bounding")
    s.add_argument("net")
    s.add_argument("--philosophy", choices=["comm", "free", "both"], default="both")
    s.set_defaults(run=cmd_check_comonad)

    s = sub.add_parser("verify", help="internal against external bound semantics")
    s.add_argument("net")
    s.add_argument("--philosophy", choices=["comm", "indiv"], default="comm")
    s.add_argument("--token-bound", type=int, default=3)
    s.add_argument("--firing-bound", type=int, default=2)
    s.add_argument("--pullback", action="store_true")
    s.add_argument("--coherence", type=int, default=0, metavar="N", help="also sample N laxator instances")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("export-dot", help="DOT rendering of a net or its reachability graph")
    s.add_argument("net")
    s.add_argument("--bounded", action="store_true")
    s.add_argument("--reachability", type=int, metavar="MAX_TOKENS")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("token_bound", "firing_bound", "max_tokens", "bound", "coherence", "k_bounded", "reachability"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            parser.error(f"--{name.replace('_', '-')} must be non-negative")
    try:
        return args.run(args)
    except (UsageError, NetError, MultisetParseError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
