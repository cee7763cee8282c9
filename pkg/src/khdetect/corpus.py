"""Fixture corpus: one knot per line, ``name<TAB>pd-code[<TAB>rank<TAB>det]``.

Blank lines and lines starting with ``#`` are skipped. The optional trailing
columns pin the reduced total rank and the determinant for regression runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .pd import Diagram, PDError, parse_pd

ALIASES = {
    "unknot": "U",
    "trefoil": "3_1",
    "figure-eight": "4_1",
    "figure8": "4_1",
}


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    pd: str
    expected: tuple[int, int] | None = None  # (total rank, determinant)

    def diagram(self) -> Diagram:
        return parse_pd(self.pd)


def parse_corpus(lines: Iterable[str]) -> list[CorpusEntry]:
    entries, seen = [], set()
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) not in (2, 4):
            raise CorpusError(f"line {lineno}: expected 2 or 4 tab-separated fields")
        name, pd = fields[0].strip(), fields[1].strip()
        if name in seen:
            raise CorpusError(f"line {lineno}: duplicate name {name!r}")
        seen.add(name)
        try:
            parse_pd(pd)
        except PDError as exc:
            raise CorpusError(f"line {lineno} ({name}): {exc}") from exc
        expected = None
        if len(fields) == 4:
            try:
                expected = (int(fields[2]), int(fields[3]))
            except ValueError as exc:
                raise CorpusError(f"line {lineno}: expected values must be integers") from exc
        entries.append(CorpusEntry(name, pd, expected))
    return entries


def format_corpus(entries: Iterable[CorpusEntry]) -> str:
    out = []
    for e in entries:
        cols = [e.name, e.pd]
        if e.expected is not None:
            cols += [str(v) for v in e.expected]
        out.append("\t".join(cols))
    return "\n".join(out) + "\n" if out else ""


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh)


def embedded() -> list[CorpusEntry]:
    text = resources.files(__package__).joinpath("data/corpus.tsv").read_text("utf-8")
    return parse_corpus(text.splitlines())


def lookup(name: str) -> CorpusEntry:
    key = ALIASES.get(name, name)
    for e in embedded():
        if e.name == key:
            return e
    raise KeyError(name)


def resolve_input(text: str) -> tuple[str, Diagram]:
    """A corpus name (or alias) or literal PD text, as (label, diagram)."""
    stripped = text.strip()
    try:
        e = lookup(stripped)
    except KeyError:
        return stripped, parse_pd(stripped)
    return e.name, e.diagram()
