"""Twisted-clasp satellites K_n of a companion diagram.

The pattern runs two parallel strands once around the companion and closes
them through a column of ``n`` half twists. ``n = 0`` closes with two caps
(always the unknot), ``n = +-1`` gives the (2, +-1)-cable and ``n = +-2`` the
positive/negative-clasp untwisted Whitehead double.

Construction on the PD code:

* every companion edge ``e`` becomes a left copy and a right copy (left of
  the companion's direction of travel);
* every companion crossing becomes a 2x2 grid of crossings, the over pair
  staying over;
* both copies of the basepoint edge are cut; running from the tail of that
  edge to its head they pass through ``2 |w|`` braid-like crossings that
  undo the blackboard framing (``w`` = writhe), then through the clasp
  column of ``|n|`` crossings.

Crossings come out clasp first, then framing twists, then the grids in
the order the companion visits its crossings starting after the cut. Edge 1
is the left strand entering the clasp; it is also the basepoint.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pd import UNKNOT, Diagram, PDValidationError, from_planar, incoming_slots, writhe


@dataclass(frozen=True)
class PatternSpec:
    n: int  # signed number of half twists in the clasp column

    @property
    def name(self) -> str:
        if self.n == 0:
            return "unknot pattern"
        if abs(self.n) == 1:
            return f"(2,{self.n:+d})-cable"
        if abs(self.n) == 2:
            return ("positive" if self.n > 0 else "negative") + "-clasp Whitehead double"
        return f"{self.n:+d} half-twist clasp"


def framing_twists(companion: Diagram) -> int:
    """Signed full twists that bring the blackboard 2-cable to the Seifert framing."""
    return -writhe(companion)


def expected_crossings(companion: Diagram, p: PatternSpec) -> int:
    return 4 * len(companion) + 2 * abs(writhe(companion)) + abs(p.n)


def _braid_crossing(nw, sw, ne, se, positive):
    """Crossing of strands nw->se and sw->ne, ccw from an under end.

    ``positive`` is the sign the crossing would have with both strands
    heading east; the nw->se strand is then the over strand.
    """
    return (sw, se, ne, nw) if positive else (se, ne, nw, sw)


def _grid(k, t, sign, label):
    """The four crossings replacing companion crossing ``k`` = X(a, b, c, d).

    ``label(edge, side, outgoing)`` names the copy of a companion edge at
    this end. Grid positions are (x, y) with the under pair at x = -1/+1
    heading north and the over pair at y = -1/+1.
    """
    a, b, c, d = t
    ends = {}
    ends[(-1, -1, "S")] = label(a, "L", False)
    ends[(1, -1, "S")] = label(a, "R", False)
    ends[(-1, 1, "N")] = label(c, "L", True)
    ends[(1, 1, "N")] = label(c, "R", True)
    # left of the over strand is north when it heads east (positive)
    top, bot = ("L", "R") if sign > 0 else ("R", "L")
    ends[(1, 1, "E")] = label(b, top, sign > 0)
    ends[(1, -1, "E")] = label(b, bot, sign > 0)
    ends[(-1, 1, "W")] = label(d, top, sign < 0)
    ends[(-1, -1, "W")] = label(d, bot, sign < 0)
    for x in (-1, 1):
        ends[(x, -1, "N")] = ends[(x, 1, "S")] = ("v", k, x)
    for y in (-1, 1):
        ends[(-1, y, "E")] = ends[(1, y, "W")] = ("h", k, y)
    order = ((-1, -1), (-1, 1), (1, 1), (1, -1))
    return [tuple(ends[(x, y, side)] for side in "SENW") for x, y in order]


def _visit_order(companion: Diagram, start_edge: int) -> list[int]:
    """Companion crossings in the order met when walking from ``start_edge``."""
    tuples = companion.tuples()
    where = {}
    for k, x in enumerate(companion.crossings):
        for s in incoming_slots(x):
            where[x.edges[s]] = (k, s)
    order, seen = [], set()
    e = start_edge
    for _ in range(companion.edge_count):
        k, s = where[e]
        if k not in seen:
            seen.add(k)
            order.append(k)
        e = tuples[k][(s + 2) % 4]
    return order


def build_satellite(companion: Diagram, p: PatternSpec, framing: int | None = None) -> Diagram:
    """``framing`` overrides the inserted full twists (default ``-writhe``)."""
    if companion.components != 1:
        raise PDValidationError("the companion must be a knot")
    n = p.n
    w = -framing_twists(companion) if framing is None else -framing
    cut = companion.basepoint

    def label(e, side, outgoing):
        if e == cut and outgoing:
            return ("tail", side)
        return ("c", e, side)

    if companion.crossings:
        top, bot = ("tail", "L"), ("tail", "R")
    else:
        top, bot = ("c", cut, "L"), ("c", cut, "R")

    twists = []
    for j in range(2 * abs(w)):
        ne, se = ("tw", j, "top"), ("tw", j, "bot")
        twists.append(_braid_crossing(top, bot, ne, se, positive=w < 0))
        top, bot = ne, se

    clasp = []
    east_top, east_bot = ("c", cut, "L"), ("c", cut, "R")
    nw, ne = top, east_top
    for j in range(abs(n)):
        last = j == abs(n) - 1
        sw = bot if last else ("cl", j, "W")
        se = east_bot if last else ("cl", j, "E")
        # n > 0 puts the sw->ne strand under, making every clasp crossing positive
        clasp.append(_braid_crossing(nw, sw, ne, se, positive=n > 0))
        nw, ne = sw, se

    grids = []
    if companion.crossings:
        head = _visit_order(companion, cut)
        for k in head:
            x = companion.crossings[k]
            grids.extend(_grid(k, x.edges, x.sign, label))

    raw = clasp + twists + grids
    if n == 0:
        # two caps: west ends joined to each other, east ends likewise
        merge = {bot: top, east_bot: east_top}
        raw = [tuple(merge.get(e, e) for e in t) for t in raw]
    if not raw:
        return UNKNOT
    # the left strand enters the clasp at its north-west end
    start = (0, 3 if n > 0 else 2) if clasp else (0, 0)
    d = from_planar(raw, start=start)
    if d.components != 1:  # pragma: no cover - the construction always closes up
        raise AssertionError("satellite construction produced a link")
    return d
