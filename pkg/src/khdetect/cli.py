"""Command-line front end.

    khdetect kh 10_124
    khdetect kh --naive --unreduced trefoil
    khdetect detect U --assert-tu1
    khdetect satellite trefoil --n 2 --emit kh
    khdetect sweep corpus.tsv --threads 4 > report.csv

Exit codes: 0 success (``detect``: Unknot), 1 ``detect`` Knotted or
``sweep`` mismatch, 2 ``detect`` Inconclusive, 3 bad input or usage.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import corpus
from .invariants import (
    InvariantViolation,
    certify,
    check_detection_inequality,
    check_satellite_bound,
    determinant,
    jones,
)
from .khovanov import khovanov
from .pd import PDError, serialize
from .satellite import PatternSpec, build_satellite

EXIT_INPUT = 3
CSV_COLUMNS = ["name", "crossings", "rank", "det", "slack", "ms"]


class _Parser(argparse.ArgumentParser):
    # argparse's default 2 would collide with the Inconclusive exit code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _engine_flags(p, reduced=True):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--fast", dest="fast", action="store_true", default=True)
    g.add_argument("--naive", dest="fast", action="store_false")
    if reduced:
        r = p.add_mutually_exclusive_group()
        r.add_argument("--reduced", dest="reduced", action="store_true", default=True)
        r.add_argument("--unreduced", dest="reduced", action="store_false")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="khdetect", description="Khovanov homology over F2 from PD codes.")
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                    help="worker processes for sweep (default: all cores)")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    kh = sub.add_parser("kh", help="rank table")
    kh.add_argument("input", help="PD code, 'U', or corpus name")
    _engine_flags(kh)

    jp = sub.add_parser("jones", help="Jones polynomial in q (t = q^2)")
    jp.add_argument("input")
    _engine_flags(jp, reduced=False)

    dp = sub.add_parser("det", help="determinant with the det <= rank check")
    dp.add_argument("input")
    _engine_flags(dp, reduced=False)

    dt = sub.add_parser("detect", help="unknot-detection certificate")
    dt.add_argument("input")
    dt.add_argument("--assert-tu1", action="store_true",
                    help="caller vouches for tangle unknotting number one")
    _engine_flags(dt, reduced=False)

    sp = sub.add_parser("satellite", help="twisted-clasp satellite of a companion")
    sp.add_argument("input", help="companion")
    sp.add_argument("--n", type=int, required=True, help="signed half twists")
    sp.add_argument("--emit", choices=("pd", "kh"), default="pd")
    _engine_flags(sp, reduced=False)

    sw = sub.add_parser("sweep", help="CSV report over a corpus file")
    sw.add_argument("corpus", nargs="?", help="corpus file (default: embedded corpus)")
    _engine_flags(sw, reduced=False)

    # the global flags are also accepted after the subcommand
    for p in (kh, jp, dp, dt, sp, sw):
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    return ap


def _print_table(table, as_json):
    print(table.dumps() if as_json else table.format())


def cmd_kh(args) -> int:
    _, d = corpus.resolve_input(args.input)
    _print_table(khovanov(d, reduced=args.reduced, fast=args.fast), args.json)
    return 0


def cmd_jones(args) -> int:
    _, d = corpus.resolve_input(args.input)
    poly = jones(khovanov(d, fast=args.fast))
    print(json.dumps({"jones": poly.to_json()}) if args.json else poly)
    return 0


def cmd_det(args) -> int:
    _, d = corpus.resolve_input(args.input)
    report = check_detection_inequality(khovanov(d, fast=args.fast))
    if args.json:
        print(json.dumps(report.to_json()))
    else:
        print(f"det {report.determinant}  rank {report.total_rank}  slack {report.slack}")
    return 0


def cmd_detect(args) -> int:
    name, d = corpus.resolve_input(args.input)
    cert = certify(khovanov(d, fast=args.fast), args.assert_tu1, name)
    print(cert.dumps())
    return cert.exit_code


def cmd_satellite(args) -> int:
    name, d = corpus.resolve_input(args.input)
    sat = build_satellite(d, PatternSpec(args.n))
    if args.emit == "pd":
        print(json.dumps({"companion": name, "n": args.n, "pd": serialize(sat)}) if args.json
              else serialize(sat))
        return 0
    table = khovanov(sat, fast=args.fast)
    bound = check_satellite_bound(table, args.n, companion_nontrivial=khovanov(d).total_rank > 1)
    if args.json:
        print(json.dumps({"table": table.to_json(), "bound": bound.to_json()}))
    else:
        print(table.format())
    return 0


def _sweep_row(entry: corpus.CorpusEntry, fast: bool):
    d = entry.diagram()
    t0 = time.perf_counter()
    table = khovanov(d, fast=fast)
    ms = (time.perf_counter() - t0) * 1000
    report = check_detection_inequality(table)
    return {
        "name": entry.name,
        "crossings": len(d),
        "rank": report.total_rank,
        "det": report.determinant,
        "slack": report.slack,
        "ms": f"{ms:.1f}",
    }


def cmd_sweep(args) -> int:
    entries = corpus.load_corpus(args.corpus) if args.corpus else corpus.embedded()
    fast = [args.fast] * len(entries)
    if args.threads > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(_sweep_row, entries, fast))
    else:
        rows = list(map(_sweep_row, entries, fast))
    writer = csv.DictWriter(sys.stdout, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    bad = 0
    for e, row in zip(entries, rows):
        if e.expected is not None and e.expected != (row["rank"], row["det"]):
            bad += 1
            print(f"mismatch {e.name}: expected rank/det {e.expected}, "
                  f"got ({row['rank']}, {row['det']})", file=sys.stderr)
    return 1 if bad else 0


COMMANDS = {
    "kh": cmd_kh,
    "jones": cmd_jones,
    "det": cmd_det,
    "detect": cmd_detect,
    "satellite": cmd_satellite,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (PDError, corpus.CorpusError, OSError) as exc:
        print(f"khdetect: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"khdetect: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
