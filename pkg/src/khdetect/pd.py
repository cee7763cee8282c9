"""Planar diagram codes: parsing, validation and diagram-level operations.

Crossings follow the KnotTheory convention: ``X(a, b, c, d)`` lists the four
incident edges counterclockwise starting from the incoming under-strand, so
the under-strand runs ``a -> c`` and the over-strand joins ``b`` and ``d``.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence


class PDError(ValueError):
    """Base class for planar-diagram errors."""


class PDSyntaxError(PDError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PDValidationError(PDError):
    pass


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]
    sign: int

    def __iter__(self):
        return iter(self.edges)

    def __str__(self) -> str:
        return "X(%d,%d,%d,%d)" % self.edges


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    basepoint: int = 1
    components: int = 1
    edge_count: int = field(default=0, compare=False)

    def __post_init__(self):
        if not self.edge_count:
            n = 2 * len(self.crossings) if self.crossings else 1
            object.__setattr__(self, "edge_count", n)

    @property
    def n_plus(self) -> int:
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for x in self.crossings if x.sign < 0)

    @property
    def is_unknot_token(self) -> bool:
        return not self.crossings

    def tuples(self) -> list[tuple[int, int, int, int]]:
        return [x.edges for x in self.crossings]

    def __len__(self) -> int:
        return len(self.crossings)

    def __str__(self) -> str:
        return serialize(self)


UNKNOT = Diagram(crossings=())


# --------------------------------------------------------------------------
# orientation tracing


def _occurrences(tuples: Sequence[Sequence[Hashable]]) -> dict:
    occ: dict = defaultdict(list)
    for k, t in enumerate(tuples):
        if len(t) != 4:
            raise PDValidationError(f"crossing {k} has {len(t)} edges, expected 4")
        for s, e in enumerate(t):
            occ[e].append((k, s))
    for e, where in occ.items():
        if len(where) != 2:
            raise PDValidationError(
                f"edge {e!r} appears {len(where)} times, expected exactly 2"
            )
    return occ


def _walk(tuples, occ, incoming, k, s, strict):
    """Follow a component from the incoming end (k, s); return entered labels."""
    labels = []
    while True:
        strand = s % 2
        seen = incoming[k][strand]
        if seen is not None:
            if seen == s:
                return labels
            raise PDValidationError(
                f"broken orientation cycle: strand through crossing {k} "
                "is traversed in both directions"
            )
        if strict and strand == 0 and s != 0:
            raise PDValidationError(
                f"broken orientation cycle: under-strand of crossing {k} "
                "does not enter at its first edge"
            )
        incoming[k][strand] = s
        labels.append(tuples[k][s])
        out = (s + 2) % 4
        e = tuples[k][out]
        a, b = occ[e]
        k, s = b if a == (k, out) else a


def _trace(tuples, strict: bool, start=None):
    """Orient every component.

    Returns ``(incoming, components)`` where ``incoming[k] = [u, o]`` gives
    the incoming slot of the under (slots 0/2) and over (slots 1/3) strands
    of crossing ``k``, and ``components`` lists the labels of each component
    in traversal order.
    """
    occ = _occurrences(tuples)
    incoming = [[None, None] for _ in tuples]
    components = []
    if start is not None:
        components.append(_walk(tuples, occ, incoming, *start, strict=False))
    for k in range(len(tuples)):
        if incoming[k][0] is None:
            components.append(_walk(tuples, occ, incoming, k, 0, strict))
    for k in range(len(tuples)):
        if incoming[k][1] is None:
            # a component that only ever passes over; orient by edge numbering
            b, d = tuples[k][1], tuples[k][3]
            s = 3 if _is_successor(d, b) else 1
            components.append(_walk(tuples, occ, incoming, k, s, strict=False))
    return incoming, components


def _is_successor(prev, nxt) -> bool:
    try:
        return nxt == prev + 1 or (nxt < prev and nxt == 1)
    except TypeError:
        return True


def _sign(over_incoming_slot: int) -> int:
    # over-strand d -> b points east when a -> c points north
    return 1 if over_incoming_slot == 3 else -1


def _build(tuples, basepoint, strict=True) -> Diagram:
    if not tuples:
        return UNKNOT
    incoming, comps = _trace(tuples, strict)
    labels = {e for t in tuples for e in t}
    n = 2 * len(tuples)
    if labels != set(range(1, n + 1)):
        raise PDValidationError(
            f"edge labels must be exactly 1..{n} for {len(tuples)} crossings"
        )
    if basepoint not in labels:
        raise PDValidationError(f"basepoint edge {basepoint} is not an edge")
    crossings = tuple(
        Crossing(tuple(t), _sign(incoming[k][1])) for k, t in enumerate(tuples)
    )
    return Diagram(crossings, basepoint, len(comps), n)


def from_tuples(tuples: Iterable[Sequence[int]], basepoint: int = 1) -> Diagram:
    """Validate crossing tuples already in PD convention."""
    return _build([tuple(t) for t in tuples], basepoint)


def from_planar(raw: Sequence[Sequence[Hashable]], start=None, base=None) -> Diagram:
    """Orient and renumber an unoriented planar diagram.

    ``raw`` holds one 4-tuple of arbitrary hashable edge labels per crossing,
    counterclockwise, with the under-strand at positions 0 and 2 (its
    direction is free). Each label must occur exactly twice. ``start`` is an
    incoming end ``(crossing, slot)``; the edge entering there becomes edge 1
    and fixes the orientation. ``base`` names the raw label to use as the
    basepoint (default: the start edge).
    """
    raw = [tuple(t) for t in raw]
    if not raw:
        return UNKNOT
    if start is None:
        start = (0, 0)
    incoming, comps = _trace(raw, strict=False, start=start)
    number = {}
    for comp in comps:
        for e in comp:
            number[e] = len(number) + 1
    tuples = []
    for k, t in enumerate(raw):
        t = tuple(number[e] for e in t)
        if incoming[k][0] == 2:
            t = t[2:] + t[:2]
        tuples.append(t)
    bp = number[base] if base is not None else 1
    return _build(tuples, bp)


# --------------------------------------------------------------------------
# text format

_INT = re.compile(r"\s*(\d+)")
_WS = re.compile(r"\s*")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        self.pos = _WS.match(self.text, self.pos).end()

    def expect(self, token: str):
        self.skip()
        if not self.text.startswith(token, self.pos):
            found = self.text[self.pos : self.pos + 1] or "end of input"
            raise PDSyntaxError(f"expected {token!r}, found {found!r}", self.pos)
        self.pos += len(token)

    def peek(self, token: str) -> bool:
        self.skip()
        return self.text.startswith(token, self.pos)

    def integer(self) -> int:
        m = _INT.match(self.text, self.pos)
        if not m:
            self.skip()
            raise PDSyntaxError("expected a positive integer edge label", self.pos)
        value = int(m.group(1))
        if value <= 0:
            raise PDSyntaxError("edge labels must be positive", m.start(1))
        self.pos = m.end()
        return value

    def crossing(self):
        self.expect("X")
        self.skip()
        opener = self.text[self.pos : self.pos + 1]
        if opener not in ("(", "["):
            raise PDSyntaxError("expected '(' after X", self.pos)
        closer = ")" if opener == "(" else "]"
        self.pos += 1
        edges = [self.integer()]
        for _ in range(3):
            self.expect(",")
            edges.append(self.integer())
        self.expect(closer)
        return tuple(edges)

    def basepoint(self):
        if self.peek("base"):
            self.expect("base")
            self.expect("=")
            return self.integer()
        return None

    def end(self):
        self.skip()
        if self.pos != len(self.text):
            raise PDSyntaxError("unexpected trailing input", self.pos)


def parse_pd(text: str) -> Diagram:
    """Parse ``PD[X(a,b,c,d), ...] [base=k]`` or the unknot token ``U``."""
    p = _Parser(text)
    if p.peek("U"):
        p.expect("U")
        base = p.basepoint()
        p.end()
        if base not in (None, 1):
            raise PDValidationError("the unknot token only has edge 1")
        return UNKNOT
    p.expect("PD")
    p.expect("[")
    if p.peek("]"):
        raise PDSyntaxError("empty PD code; write 'U' for the unknot", p.pos)
    tuples = [p.crossing()]
    while p.peek(","):
        p.expect(",")
        tuples.append(p.crossing())
    p.expect("]")
    base = p.basepoint()
    p.end()
    return _build(tuples, 1 if base is None else base)


def serialize(d: Diagram) -> str:
    if not d.crossings:
        return "U"
    body = ",".join(str(x) for x in d.crossings)
    return f"PD[{body}] base={d.basepoint}"


# --------------------------------------------------------------------------
# diagram operations


def writhe(d: Diagram) -> int:
    return sum(x.sign for x in d.crossings)


def mirror(d: Diagram) -> Diagram:
    """Swap over and under at every crossing."""
    tuples = []
    for x in d.crossings:
        a, b, c, e = x.edges
        # the new under-strand is the old over-strand, entering at its tail
        tuples.append((e, a, b, c) if x.sign > 0 else (b, c, e, a))
    return _build(tuples, d.basepoint) if tuples else d


def reverse(d: Diagram) -> Diagram:
    """Reverse the orientation, renumbering so edge labels stay consecutive."""
    if not d.crossings:
        return d
    n = d.edge_count
    r = lambda e: n + 1 - e  # noqa: E731
    tuples = [(r(c), r(e), r(a), r(b)) for a, b, c, e in d.tuples()]
    return _build(tuples, r(d.basepoint))


def incoming_slots(x: Crossing) -> tuple[int, int]:
    return (0, 3 if x.sign > 0 else 1)


def _head(d: Diagram, edge: int) -> tuple[int, int]:
    """The end ``(crossing, slot)`` where ``edge`` enters a crossing."""
    for k, x in enumerate(d.crossings):
        for s in incoming_slots(x):
            if x.edges[s] == edge:
                return k, s
    raise PDValidationError(f"edge {edge} has no head")  # pragma: no cover


def connected_sum(d1: Diagram, d2: Diagram) -> Diagram:
    """Band-sum at the basepoint edges; the result keeps ``d1``'s basepoint."""
    for d in (d1, d2):
        if d.components != 1:
            raise PDValidationError("connected sum needs single-component diagrams")
    if not d1.crossings:
        return d2
    if not d2.crossings:
        return d1
    raw = [[("a", e) for e in x.edges] for x in d1.crossings]
    raw += [[("b", e) for e in x.edges] for x in d2.crossings]
    k1, s1 = _head(d1, d1.basepoint)
    k2, s2 = _head(d2, d2.basepoint)
    k2 += len(d1.crossings)
    # cross-join: d1's basepoint tail now runs into d2, and vice versa
    raw[k1][s1], raw[k2][s2] = raw[k2][s2], raw[k1][s1]
    return from_planar(raw, start=(k2, s2))


def from_braid(word: Sequence[int], strands: int | None = None) -> Diagram:
    """Closure of a braid word; ``i`` is sigma_i, ``-i`` its inverse."""
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    if not word:
        if strands != 1:
            raise PDValidationError("closure of the empty braid is an unlink")
        return UNKNOT
    current = [("in", p) for p in range(strands)]
    raw = []
    for t, g in enumerate(word):
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise PDValidationError(f"generator {g} out of range for {strands} strands")
        bl, br = current[i], current[i + 1]
        tl, tr = ("e", t, 0), ("e", t, 1)
        # positive generators carry the left strand over
        raw.append((br, tr, tl, bl) if g > 0 else (bl, br, tr, tl))
        current[i], current[i + 1] = tl, tr
    if any(current[p] == ("in", p) for p in range(strands)):
        raise PDValidationError("braid closure has an isolated strand")
    closing = {("in", p): current[p] for p in range(strands)}
    raw = [tuple(closing.get(e, e) for e in t) for t in raw]
    d = from_planar(raw)
    if d.components != 1:
        raise PDValidationError(f"braid closure has {d.components} components")
    return d
