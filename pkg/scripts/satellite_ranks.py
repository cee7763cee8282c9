"""Reduced ranks of K_n satellites for a list of companions.

    python3 scripts/satellite_ranks.py 3_1 4_1 --n -2 -1 0 1 2 [--naive]

Prints one row per (companion, n) with crossing count, rank, determinant,
the 4|n|+1 bound and wall time.
"""

from __future__ import annotations

import argparse
import time

from khdetect.corpus import resolve_input
from khdetect.invariants import check_satellite_bound, determinant
from khdetect.khovanov import khovanov
from khdetect.satellite import PatternSpec, build_satellite


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("companions", nargs="+")
    ap.add_argument("--n", type=int, nargs="+", default=[-2, -1, 0, 1, 2])
    ap.add_argument("--naive", action="store_true")
    args = ap.parse_args(argv)

    print(f"{'companion':14} {'n':>3} {'c':>4} {'rank':>5} {'det':>4} {'bound':>5} {'s':>7}")
    for text in args.companions:
        name, d = resolve_input(text)
        nontrivial = khovanov(d).total_rank > 1
        for n in args.n:
            sat = build_satellite(d, PatternSpec(n))
            t0 = time.perf_counter()
            t = khovanov(sat, fast=not args.naive)
            dt = time.perf_counter() - t0
            rep = check_satellite_bound(t, n, nontrivial)
            bound = rep.bound if rep.applicable else "-"
            print(f"{name:14} {n:>3} {len(sat):>4} {t.total_rank:>5} {determinant(t):>4} {bound:>5} {dt:7.2f}")


if __name__ == "__main__":
    main()
