"""Sweep the token bound of both isomorphism checks and tabulate the outcome.

    python3 scripts/bound_sweep.py nets/n0.json --max-tokens 5 --firing-bound 2

The collective check on the example net stops matching at four tokens:
pairing ``t1 ; t2`` from ``{a, b}`` with the same run on anti-tokens asks
the bounded ``t1`` for a ``c-`` that no marking in the hom-set provides.
"""

import argparse
import sys
import time

from boundnets import load_net, verify_theorem_comm, verify_theorem_indiv


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("net")
    ap.add_argument("--max-tokens", type=int, default=5)
    ap.add_argument("--firing-bound", type=int, default=2)
    ap.add_argument("--skip-indiv-above", type=int, default=3, help="the individual check grows quickly")
    args = ap.parse_args(argv)
    net, _ = load_net(args.net)
    print(f"{'check':<12} {'tokens':>6} {'objects':>8} {'morphisms':>10} {'failures':>9} {'seconds':>8}")
    for k in range(args.max_tokens + 1):
        for name, verify in (("collective", verify_theorem_comm), ("individual", verify_theorem_indiv)):
            if name == "individual" and k > args.skip_indiv_above:
                continue
            t0 = time.perf_counter()
            w = verify(net, k, args.firing_bound)
            fails = sum(len(v) for v in w.report.values())
            print(f"{name:<12} {k:>6} {w.counts.get('objects', 0):>8} {w.counts.get('morphisms', 0):>10} "
                  f"{fails:>9} {time.perf_counter() - t0:>8.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
