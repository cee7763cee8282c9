"""Kauffman states of a diagram and the merge/split data on cube edges."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .pd import Diagram

# slot pairs joined by each smoothing of X(a, b, c, d)
SMOOTHINGS = (((0, 1), (2, 3)), ((0, 3), (1, 2)))


@dataclass(frozen=True)
class ResolutionState:
    bits: str
    circles: tuple[tuple[int, ...], ...]

    @property
    def weight(self) -> int:
        return self.bits.count("1")

    def key_of(self, edge: int) -> int:
        for c in self.circles:
            if edge in c:
                return min(c)
        raise KeyError(edge)


@dataclass(frozen=True)
class EdgeTransition:
    from_state: str
    flipped_crossing: int
    kind: str  # "merge" or "split"
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]


def _mask(bits, n: int) -> int:
    if isinstance(bits, int):
        if bits < 0 or bits >> n:
            raise ValueError(f"state {bits} does not fit {n} crossings")
        return bits
    bits = "".join(str(b) for b in bits)
    if len(bits) != n or set(bits) - {"0", "1"}:
        raise ValueError(f"expected a {n}-bit binary word, got {bits!r}")
    return sum(1 << i for i, b in enumerate(bits) if b == "1")


def _word(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def circle_keys(tuples: Sequence[Sequence[int]], mask: int) -> dict[int, int]:
    """Map every edge to the smallest edge on its circle in state ``mask``."""
    parent: dict[int, int] = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while x != root:
            parent[x], x = root, parent[x]
        return root

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            if rx < ry:
                parent[ry] = rx
            else:
                parent[rx] = ry

    for k, t in enumerate(tuples):
        for s, u in SMOOTHINGS[mask >> k & 1]:
            union(t[s], t[u])
    return {e: find(e) for t in tuples for e in t}


def _ordered_circles(tuples, mask) -> tuple[tuple[int, ...], ...]:
    # each edge has two ends; the smoothing pairs ends at every crossing
    ends: dict[int, list] = {}
    joined = {}
    for k, t in enumerate(tuples):
        for s, u in SMOOTHINGS[mask >> k & 1]:
            joined[(k, s)] = (k, u)
            joined[(k, u)] = (k, s)
        for s, e in enumerate(t):
            ends.setdefault(e, []).append((k, s))
    seen = set()
    circles = []
    for e in sorted(ends):
        if e in seen:
            continue
        circle = []
        cur, end = e, ends[e][1]
        while cur not in seen:
            seen.add(cur)
            circle.append(cur)
            k, s = joined[end]
            cur = tuples[k][s]
            a, b = ends[cur]
            end = b if a == (k, s) else a
        circles.append(tuple(circle))
    return tuple(circles)


def resolve(d: Diagram, bits) -> ResolutionState:
    n = len(d.crossings)
    mask = _mask(bits, n)
    if n == 0:
        return ResolutionState("", ((d.basepoint,),))
    return ResolutionState(_word(mask, n), _ordered_circles(d.tuples(), mask))


def transition(d: Diagram, s: ResolutionState, k: int) -> EdgeTransition:
    n = len(d.crossings)
    if not 0 <= k < n:
        raise IndexError(f"crossing {k} out of range")
    if s.bits[k] == "1":
        raise ValueError(f"crossing {k} is already 1-resolved in {s.bits}")
    tuples = d.tuples()
    mask = _mask(s.bits, n)
    before = circle_keys(tuples, mask)
    after = circle_keys(tuples, mask | 1 << k)
    touched = tuples[k]
    ins = tuple(sorted({before[e] for e in touched}))
    outs = tuple(sorted({after[e] for e in touched}))
    if len(ins) == 2 and len(outs) == 1:
        kind = "merge"
    elif len(ins) == 1 and len(outs) == 2:
        kind = "split"
    else:  # pragma: no cover - a single flip always changes the count by one
        raise AssertionError(f"flip of crossing {k} kept the circle count")
    return EdgeTransition(s.bits, k, kind, ins, outs)


def gray_code(n: int) -> Iterator[int]:
    for i in range(1 << n):
        yield i ^ (i >> 1)


def states(d: Diagram) -> Iterator[ResolutionState]:
    """All 2^c states, in Gray-code order."""
    n = len(d.crossings)
    for mask in gray_code(n):
        yield resolve(d, mask)
