"""Khovanov chain complexes over F2 from the cube of resolutions.

Gradings: a generator in a state of weight ``r`` with labels ``1``/``x`` sits
at ``i = r - n_minus`` and ``j = (#1 - #x) + r + n_plus - 2 n_minus``; the
reduced complex adds one to ``j`` so the unknot sits at (0, 0).
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field

from . import f2
from .cube import circle_keys
from .pd import Diagram, PDValidationError

ONE, X = "1", "x"


@dataclass(frozen=True)
class Generator:
    state: str
    labeling: tuple[tuple[int, str], ...]  # (circle key, label), sorted by key


@dataclass
class Block:
    generators: list[Generator]
    boundary: f2.F2Matrix  # into the block at (i + 1, j)


@dataclass
class GradedComplex:
    blocks: dict[tuple[int, int], Block]
    n_plus: int
    n_minus: int
    reduced: bool

    def dim(self, i: int, j: int) -> int:
        b = self.blocks.get((i, j))
        return len(b.generators) if b else 0

    @property
    def total_dim(self) -> int:
        return sum(len(b.generators) for b in self.blocks.values())

    def check_d_squared(self) -> None:
        for (i, j), b in self.blocks.items():
            nxt = self.blocks.get((i + 1, j))
            if nxt is not None and not (nxt.boundary @ b.boundary).is_zero():
                raise f2.MalformedComplexError(f"d^2 != 0 at ({i}, {j})")


@dataclass
class RankTable:
    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    reduced: bool = True

    def __post_init__(self):
        self.entries = {k: v for k, v in sorted(self.entries.items()) if v}

    @property
    def total_rank(self) -> int:
        return sum(self.entries.values())

    def __eq__(self, other):
        if not isinstance(other, RankTable):
            return NotImplemented
        return self.reduced == other.reduced and self.entries == other.entries

    def shifted(self, di: int = 0, dj: int = 0) -> "RankTable":
        return RankTable({(i + di, j + dj): v for (i, j), v in self.entries.items()}, self.reduced)

    def flipped(self) -> "RankTable":
        """The table with every bigrading (i, j) sent to (-i, -j)."""
        return RankTable({(-i, -j): v for (i, j), v in self.entries.items()}, self.reduced)

    def to_json(self) -> dict:
        return {
            "reduced": self.reduced,
            "entries": [[i, j, v] for (i, j), v in sorted(self.entries.items())],
            "total": self.total_rank,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj) -> "RankTable":
        if isinstance(obj, str):
            obj = json.loads(obj)
        table = cls({(i, j): v for i, j, v in obj["entries"]}, bool(obj["reduced"]))
        if table.total_rank != obj["total"]:
            raise ValueError("total does not match the entries")
        return table

    def format(self) -> str:
        """Aligned text grid: rows are j (descending), columns are i."""
        if not self.entries:
            return "(empty)"
        i_vals = sorted({i for i, _ in self.entries})
        j_vals = sorted({j for _, j in self.entries}, reverse=True)
        width = max(3, *(len(str(v)) for v in i_vals))
        lines = ["j\\i " + " ".join(str(i).rjust(width) for i in i_vals)]
        for j in j_vals:
            cells = (str(self.entries.get((i, j), "")).rjust(width) for i in i_vals)
            lines.append(str(j).rjust(3) + " " + " ".join(cells))
        lines.append(f"total {self.total_rank}")
        return "\n".join(lines)


def _unknot_complex(reduced: bool) -> GradedComplex:
    def block(lbl):
        return Block([Generator("", ((1, lbl),))], f2.F2Matrix.zeros(0, 1))

    if reduced:
        return GradedComplex({(0, 0): block(X)}, 0, 0, True)
    return GradedComplex({(0, 1): block(ONE), (0, -1): block(X)}, 0, 0, False)


def build_complex(d: Diagram, reduced: bool = True) -> GradedComplex:
    """The Khovanov complex of ``d``; reduced means the basepoint circle is labeled x."""
    if reduced and d.components != 1:
        raise PDValidationError("reduced homology needs a single-component diagram")
    n = len(d.crossings)
    if n == 0:
        return _unknot_complex(reduced)
    tuples = d.tuples()
    n_plus, n_minus = d.n_plus, d.n_minus
    shift = n_plus - 2 * n_minus + (1 if reduced else 0)

    # per state: ordered circle keys and the basepoint circle's position
    circles = []
    for mask in range(1 << n):
        keys = circle_keys(tuples, mask)
        order = sorted(set(keys.values()))
        circles.append((order, {c: p for p, c in enumerate(order)}, keys))

    index: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    position: dict[tuple[int, int], int] = {}
    for mask, (order, _, keys) in enumerate(circles):
        w = bin(mask).count("1")
        m = len(order)
        fixed = 1 << order.index(keys[d.basepoint]) if reduced else 0
        for lab in range(1 << m):
            if lab & fixed != fixed:
                continue
            xs = bin(lab).count("1")
            grade = (w - n_minus, m - 2 * xs + w + shift)
            position[(mask, lab)] = len(index[grade])
            index[grade].append((mask, lab))

    entries: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for grade, gens in index.items():
        for col, (mask, lab) in enumerate(gens):
            for target, tlab in _boundary(tuples, circles, mask, lab, n):
                entries[grade].append((position[(target, tlab)], col))

    blocks = {}
    for (i, j), gens in index.items():
        rows = len(index.get((i + 1, j), ()))
        matrix = f2.F2Matrix.from_entries(rows, len(gens), entries[(i, j)])
        blocks[(i, j)] = Block([_generator(circles, g, n) for g in gens], matrix)
    return GradedComplex(blocks, n_plus, n_minus, reduced)


def _generator(circles, gen, n) -> Generator:
    mask, lab = gen
    order = circles[mask][0]
    word = "".join("1" if mask >> k & 1 else "0" for k in range(n))
    return Generator(word, tuple((c, X if lab >> p & 1 else ONE) for p, c in enumerate(order)))


def _boundary(tuples, circles, mask, lab, n):
    """Targets of one generator; bit p of a labeling set means circle p is x."""
    order, pos, keys = circles[mask]
    for k in range(n):
        if mask >> k & 1:
            continue
        target = mask | 1 << k
        t_order, t_pos, t_keys = circles[target]
        a, b, c, e = tuples[k]
        # circles away from crossing k keep their edge sets, hence their keys
        rest = 0
        touched = {keys[a], keys[b], keys[c], keys[e]}
        for p, key in enumerate(order):
            if key not in touched and lab >> p & 1:
                rest |= 1 << t_pos[key]
        if len(t_order) < len(order):
            p1, p2 = (pos[key] for key in touched)
            q = t_pos[t_keys[a]]
            xs = (lab >> p1 & 1) + (lab >> p2 & 1)
            if xs == 0:
                yield target, rest
            elif xs == 1:
                yield target, rest | 1 << q
        else:
            (p,) = (pos[key] for key in touched)
            q1, q2 = sorted({t_pos[t_keys[e_]] for e_ in (a, b, c, e)})
            if lab >> p & 1:
                yield target, rest | 1 << q1 | 1 << q2
            else:
                yield target, rest | 1 << q1
                yield target, rest | 1 << q2


def homology(c: GradedComplex) -> RankTable:
    entries = {}
    for (i, j), b in c.blocks.items():
        prev = c.blocks.get((i - 1, j))
        d_in = prev.boundary if prev else f2.F2Matrix.zeros(len(b.generators), 0)
        entries[(i, j)] = f2.homology_rank(d_in, b.boundary)
    return RankTable(entries, c.reduced)


def euler_characteristic(c: GradedComplex) -> dict[int, int]:
    """Coefficients of sum over generators of (-1)^i q^j."""
    out: dict[int, int] = defaultdict(int)
    for (i, j), b in c.blocks.items():
        out[j] += (-1) ** (i % 2) * len(b.generators)
    return {j: v for j, v in out.items() if v}


def khovanov(d: Diagram, reduced: bool = True, fast: bool = True) -> RankTable:
    if fast:
        from .scanning import homology_fast

        return homology_fast(d, reduced)
    return homology(build_complex(d, reduced))
