"""Regenerate the embedded fixture corpus.

Diagrams come from braid closures, a pretzel diagram and connected sums.
Every entry is computed on both engine paths before its rank and
determinant are pinned.

    python3 scripts/build_corpus.py [--out src/khdetect/data/corpus.tsv]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from khdetect.corpus import CorpusEntry, format_corpus
from khdetect.invariants import determinant
from khdetect.khovanov import khovanov
from khdetect.pd import UNKNOT, connected_sum, from_braid, from_planar, mirror, parse_pd, serialize

TREFOIL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)] base=1"
FIGURE_EIGHT = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)] base=1"

BRAIDS = [
    ("unknot_ri", [1]),
    ("unknot_ri_neg", [-1]),
    ("unknot_ri2", [1, 2]),
    ("unknot_rii", [1, 2, 2, -2]),
    ("unknot_rii_b", [-1, 2, 1, -1]),
    ("3_1_braid_stab", [-1, -1, -1, 2]),
    ("3_1_braid_stab_neg", [-1, -1, -1, -2]),
    ("3_1_rii", [-1, -1, -1, 2, 1, -1]),
    ("3_1_mirror", [1, 1, 1]),
    ("4_1_braid", [1, -2, 1, -2]),
    ("4_1_braid_stab", [1, -2, 1, -2, 3]),
    ("5_1", [1] * 5),
    ("5_2", [1, 1, 1, 2, -1, 2]),
    ("6_1", [1, 1, 2, -1, -3, 2, -3]),
    ("6_2", [1, 1, 1, -2, 1, -2]),
    ("6_3", [1, 1, -2, 1, -2, -2]),
    ("7_1", [1] * 7),
    ("7_2", [1, 1, 1, 2, -1, 2, 3, -2, 3]),
    ("7_3", [1, 1, 1, 1, 1, 2, -1, 2]),
    ("7_4", [1, 1, 2, -1, 2, 2, 3, -2, 3]),
    ("7_5", [1, 1, 1, 1, 2, -1, 2, 2]),
    ("7_6", [1, 1, -2, 1, 3, -2, 3]),
    ("7_7", [1, -2, 1, -2, 3, -2, 3]),
    ("8_19", [1, 2] * 4),
    ("8_20", [1, 1, 1, -2, -1, -1, -1, -2]),
    ("8_21", [1, 1, 1, 2, -1, -1, 2, 2]),
    ("9_1", [1] * 9),
    ("10_124", [1, 2] * 5),
]


def _column(top_l, top_r, bot_l, bot_r, p, tag):
    """``|p|`` vertical half twists between two pairs of ends."""
    out = []
    nw, ne = top_l, top_r
    for j in range(abs(p)):
        last = j == abs(p) - 1
        sw = bot_l if last else (tag, j, "W")
        se = bot_r if last else (tag, j, "E")
        out.append((sw, se, ne, nw) if p > 0 else (se, ne, nw, sw))
        nw, ne = sw, se
    return out


def pretzel(*ps: int):
    k = len(ps)
    raw = []
    for i, p in enumerate(ps):
        raw += _column(("t", (i - 1) % k), ("t", i), ("b", (i - 1) % k), ("b", i), p, ("m", i))
    return from_planar(raw)


def diagrams():
    yield "U", UNKNOT
    yield "3_1", parse_pd(TREFOIL)
    yield "4_1", parse_pd(FIGURE_EIGHT)
    for name, word in BRAIDS:
        yield name, from_braid(word)
    yield "10_124_pretzel", pretzel(-2, 3, 5)
    t, f = parse_pd(TREFOIL), parse_pd(FIGURE_EIGHT)
    yield "3_1#3_1", connected_sum(t, t)
    yield "3_1#3_1_mirror", connected_sum(t, mirror(t))
    yield "3_1#4_1", connected_sum(t, f)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    root = Path(__file__).resolve().parents[1]
    ap.add_argument("--out", type=Path, default=root / "src/khdetect/data/corpus.tsv")
    args = ap.parse_args(argv)

    entries = []
    for name, d in diagrams():
        fast = khovanov(d, fast=True)
        naive = khovanov(d, fast=False)
        if fast != naive:
            raise SystemExit(f"{name}: engine paths disagree")
        entries.append(CorpusEntry(name, serialize(d), (fast.total_rank, determinant(fast))))
        print(f"{name:18} c={len(d):2} rank={fast.total_rank:3} det={determinant(fast)}")
    header = "# name\tpd\trank\tdet  (regenerate with scripts/build_corpus.py)\n"
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(header + format_corpus(entries), encoding="utf-8")
    print(f"wrote {len(entries)} entries to {args.out}")


if __name__ == "__main__":
    main()
