"""Wall time of the naive and scanning paths on braid-closure families.

    python3 scripts/engine_timing.py --family torus3 --max 14 [--skip-naive-above 12]

Families: torus3 = (s1 s2)^k closures, twist = s1^k closures on two strands.
"""

from __future__ import annotations

import argparse
import time

from khdetect.khovanov import khovanov
from khdetect.pd import from_braid

FAMILIES = {
    "torus3": lambda k: ([1, 2] * (k // 2), 3) if k % 3 else None,
    "twist": lambda k: ([1] * k, 2) if k % 2 else None,
}


def _time(d, fast):
    t0 = time.perf_counter()
    t = khovanov(d, fast=fast)
    return t, time.perf_counter() - t0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=sorted(FAMILIES), default="torus3")
    ap.add_argument("--max", type=int, default=14, help="largest crossing count")
    ap.add_argument("--skip-naive-above", type=int, default=12)
    args = ap.parse_args(argv)

    print(f"{'c':>3} {'rank':>5} {'fast s':>8} {'naive s':>8}")
    for c in range(2, args.max + 1):
        spec = FAMILIES[args.family](c)
        if spec is None:
            continue
        word, strands = spec
        if len(word) != c:
            continue
        try:
            d = from_braid(word, strands)
        except ValueError:
            continue
        fast, t_fast = _time(d, True)
        naive_col = "-"
        if c <= args.skip_naive_above:
            naive, t_naive = _time(d, False)
            assert naive == fast, f"paths disagree at {c} crossings"
            naive_col = f"{t_naive:8.3f}"
        print(f"{c:>3} {fast.total_rank:>5} {t_fast:8.3f} {naive_col:>8}")


if __name__ == "__main__":
    main()
