"""Run every desk-scale check on a net file and print a report.

    python3 scripts/check_theorems.py nets/n0.json --token-bound 3 --firing-bound 2
"""

import argparse
import sys
import time

from boundnets import (
    FREE,
    check_comonad_laws,
    check_lax_coherence,
    check_pullback,
    counit_presentation,
    external_comm,
    external_indiv,
    load_net,
    verify_theorem_comm,
    verify_theorem_indiv,
)
from boundnets.span_semantics import comm_sampler, corrupted, gamma_sampler


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("net")
    ap.add_argument("--token-bound", type=int, default=3)
    ap.add_argument("--firing-bound", type=int, default=2)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    net, _ = load_net(args.net)
    ok = True

    def section(title, lines, passed):
        nonlocal ok
        ok = ok and passed
        print(f"== {title}")
        for line in lines:
            print(line)

    for ph in ("comm", "free"):
        t0 = time.perf_counter()
        rep = check_comonad_laws(net, ph)
        section(f"comonad laws [{ph}] ({time.perf_counter() - t0:.2f} s)", rep.lines(), rep.ok)

    for verify in (verify_theorem_comm, verify_theorem_indiv):
        t0 = time.perf_counter()
        w = verify(net, args.token_bound, args.firing_bound)
        section(f"{verify.__name__} ({time.perf_counter() - t0:.2f} s)", w.lines(), w.complete)

    t0 = time.perf_counter()
    rep = check_pullback(net, args.token_bound, args.firing_bound)
    section(f"pullback ({time.perf_counter() - t0:.2f} s)", rep.lines(), rep.ok)

    for F, sampler in ((external_comm(net), comm_sampler(net)),
                       (external_indiv(net), gamma_sampler(counit_presentation(net, FREE)))):
        rep = check_lax_coherence(F, sampler, args.samples, seed=args.seed)
        control = check_lax_coherence(corrupted(F), sampler, args.samples, seed=args.seed)
        section(f"lax coherence of {F.name}", rep.lines() + [f"negative control caught: {not control.ok}"],
                rep.ok and not control.ok)

    print("ALL PASS" if ok else "SOME CHECKS FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
