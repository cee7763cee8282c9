"""Khovanov homology by scanning crossings one at a time.

The diagram is cut open at its basepoint edge and crossings are added in PD
order. After each addition the complex lives over crossingless tangles whose
boundary is the set of edges leaving the processed region. Closed loops are
removed by delooping and every identity entry of the differential is
cancelled by Gaussian elimination, which keeps the intermediate complex small.

Objects are ``(i, q, matching)`` with the matching a sorted tuple of point
pairs. A morphism between matchings ``m1`` and ``m2`` is a set of terms; each
term is a bitmask saying which cycles of ``m1 u m2`` carry a dot (cycles are
numbered by their smallest point). This is a basis of the morphism space in
the dotted cobordism category with sphere = 0, dotted sphere = 1, two dots =
0 and neck-cutting, read mod 2.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from functools import lru_cache

from . import f2
from .cube import SMOOTHINGS
from .khovanov import RankTable
from .pd import Diagram, PDValidationError

ID = frozenset((0,))
_END = 1 << 60  # node ids for the ends of the crossing being added


@lru_cache(maxsize=None)
def _partner(m):
    p = {}
    for u, v in m:
        p[u] = v
        p[v] = u
    return p


@lru_cache(maxsize=1 << 16)
def _cycles(m1, m2):
    """Number the cycles of ``m1 u m2``; returns (point -> cycle, count)."""
    p1, p2 = _partner(m1), _partner(m2)
    where = {}
    n = 0
    for start in sorted(p1):
        if start in where:
            continue
        cur = start
        while cur not in where:
            where[cur] = n
            nxt = p1[cur]
            where[nxt] = n
            cur = p2[nxt]
        n += 1
    return where, n


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def _components(n_pieces, glues, dot_bits, n_slots, cycle_pieces):
    """Group glued disks into connected surfaces.

    ``glues`` lists piece pairs glued along an interval, ``dot_bits`` holds
    ``(piece, slot, bit)`` saying where a piece's dot would be read from, and
    ``cycle_pieces[k]`` is a piece touching boundary cycle ``k`` of the
    result. Returns ``(dot masks, genus, cycle mask, cycles)`` per surface.
    """
    uf = _UnionFind(n_pieces)
    for a, b in glues:
        uf.union(a, b)
    roots = [uf.find(p) for p in range(n_pieces)]
    chi = Counter(roots)
    for a, _ in glues:
        chi[roots[a]] -= 1
    masks = {r: [0] * n_slots for r in chi}
    for p, slot, bit in dot_bits:
        masks[roots[p]][slot] |= bit
    cycles = {r: [] for r in chi}
    for k, p in enumerate(cycle_pieces):
        cycles[roots[p]].append(k)
    out = []
    for r, cs in cycles.items():
        twice_genus = 2 - chi[r] - len(cs)
        assert twice_genus >= 0 and twice_genus % 2 == 0, "non-orientable gluing"
        out.append((tuple(masks[r]), twice_genus // 2, sum(1 << k for k in cs), tuple(cs)))
    return out


def _evaluate(comps, dots_of):
    """Neck-cut a glued surface into dotted disks; returns result masks (mod 2).

    ``dots_of(masks)`` counts the dots sitting on a component.
    """
    options = [0]
    for masks, genus, cmask, cycs in comps:
        dots = dots_of(masks)
        if genus or dots > 1 or (not cycs and dots != 1):
            return ()
        if not cycs:
            continue
        if dots == 1:
            options = [o | cmask for o in options]
        else:
            options = [o | (cmask ^ 1 << c) for o in options for c in cycs]
    return options


@lru_cache(maxsize=1 << 16)
def _compose_topology(m1, m2, m3):
    c12, n12 = _cycles(m1, m2)
    c23, n23 = _cycles(m2, m3)
    c13, n13 = _cycles(m1, m3)
    glues = [(c12[u], n12 + c23[u]) for u, _ in m2]
    dots = [(k, 0, 1 << k) for k in range(n12)]
    dots += [(n12 + k, 1, 1 << k) for k in range(n23)]
    reps = [None] * n13
    for p, k in c13.items():
        if reps[k] is None:
            reps[k] = c12[p]
    return _components(n12 + n23, glues, dots, 2, reps)


def compose(m1, m2, m3, f, g):
    """The composite ``g . f`` of ``f: m1 -> m2`` and ``g: m2 -> m3``."""
    comps = _compose_topology(m1, m2, m3)
    out = set()
    for a in f:
        for b in g:
            res = _evaluate(
                comps, lambda ms: (a & ms[0]).bit_count() + (b & ms[1]).bit_count()
            )
            for o in res:
                out ^= {o}
    return frozenset(out)


class _Step:
    """Tensoring the current complex with one crossing."""

    def __init__(self, labels, boundary):
        self.labels = labels
        glue = {}
        for s, l in enumerate(labels):
            if l in boundary:
                glue[l] = _END + s
                glue[_END + s] = l
        for s in range(4):
            for t in range(s + 1, 4):
                if labels[s] == labels[t]:
                    glue[_END + s] = _END + t
                    glue[_END + t] = _END + s
        self.glue = glue
        self.pairs = [(x, y) for x, y in glue.items() if x < y]
        self.boundary = frozenset(
            [p for p in boundary if p not in glue]
            + [l for s, l in enumerate(labels) if _END + s not in glue]
        )
        self.arcs = []
        for sm in SMOOTHINGS:
            p = {}
            for s, t in sm:
                p[_END + s] = _END + t
                p[_END + t] = _END + s
            self.arcs.append(p)
        self._nodes = {l: _END + s for s, l in enumerate(labels) if _END + s not in glue}
        self._obj = {}
        self._mor = {}

    def name(self, node):
        return node if node < _END else self.labels[node - _END]

    def node(self, point):
        return self._nodes.get(point, point)

    def object(self, m, s):
        """Glue smoothing ``s`` onto matching ``m``: (new matching, loops)."""
        key = (m, s)
        hit = self._obj.get(key)
        if hit is not None:
            return hit
        pm = _partner(m)
        arcs = self.arcs[s]
        glue = self.glue

        def arc(x):
            return pm[x] if x < _END else arcs[x]

        nodes = list(pm) + list(arcs)
        seen = set()
        pairs = []
        for x in nodes:
            if x in seen or x in glue:
                continue
            cur = x
            seen.add(cur)
            while True:
                y = arc(cur)
                seen.add(y)
                if y not in glue:
                    break
                cur = glue[y]
                seen.add(cur)
            a, b = self.name(x), self.name(y)
            pairs.append((a, b) if a < b else (b, a))
        loops = []
        for x in sorted(nodes):
            if x in seen:
                continue
            loop = []
            cur = x
            while cur not in seen:
                seen.add(cur)
                loop.append(cur)
                y = arc(cur)
                seen.add(y)
                loop.append(y)
                cur = glue[y]
            loops.append(min(loop))
        hit = (tuple(sorted(pairs)), tuple(loops))
        self._obj[key] = hit
        return hit

    def _topology(self, m1, m2, sa, sb):
        key = (m1, m2, sa, sb)
        hit = self._mor.get(key)
        if hit is not None:
            return hit
        c12, n12 = _cycles(m1, m2)
        if sa == sb:
            xpiece = {}
            for idx, (s, t) in enumerate(SMOOTHINGS[sa]):
                xpiece[s] = xpiece[t] = idx
            n_pieces = n12 + 2
        else:
            xpiece = dict.fromkeys(range(4), 0)
            n_pieces = n12 + 1

        def piece(node):
            return c12[node] if node < _END else n12 + xpiece[node - _END]

        glues = [(piece(x), piece(y)) for x, y in self.pairs]
        new1, loops1 = self.object(m1, sa)
        new2, loops2 = self.object(m2, sb)
        cn, ncn = _cycles(new1, new2)
        reps = [None] * ncn
        for p, cyc in cn.items():
            if reps[cyc] is None:
                reps[cyc] = piece(self.node(p))
        reps += [piece(x) for x in loops1] + [piece(x) for x in loops2]
        dots = [(k, 0, 1 << k) for k in range(n12)]
        comps = _components(n_pieces, glues, dots, 1, reps)
        hit = (comps, ncn, len(loops1), len(loops2))
        self._mor[key] = hit
        return hit

    def tensor(self, m1, m2, f, sa, sb):
        """``f`` tensored with the crossing's identity (sa == sb) or saddle.

        Returns {(source variant, target variant): morphism} over the
        delooped objects.
        """
        comps, ncn, l1, l2 = self._topology(m1, m2, sa, sb)
        through = (1 << ncn) - 1
        src_all = (1 << l1) - 1
        out = defaultdict(set)
        for a in f:
            for o in _evaluate(comps, lambda ms: (a & ms[0]).bit_count()):
                # a dotted source loop pairs with the +1 summand
                sigma = ~(o >> ncn) & src_all
                tau = o >> (ncn + l1)
                out[(sigma, tau)] ^= {o & through}
        return {k: frozenset(v) for k, v in out.items() if v}


class _Complex:
    def __init__(self):
        self.objs = {0: (0, 0, ())}
        self.succ = {0: {}}
        self.pred = {0: {}}
        self.boundary = frozenset()
        self._next = 1

    def __len__(self):
        return len(self.objs)

    def add_crossing(self, labels):
        step = _Step(labels, self.boundary)
        objs, succ, pred = {}, {}, {}
        ids = {}
        nid = 0
        for oid, (i, q, m) in self.objs.items():
            for s in (0, 1):
                new, loops = step.object(m, s)
                k = len(loops)
                for sigma in range(1 << k):
                    objs[nid] = (i + s, q + s + k - 2 * sigma.bit_count(), new)
                    succ[nid] = {}
                    pred[nid] = {}
                    ids[(oid, s, sigma)] = nid
                    nid += 1

        def link(x, y, mor):
            succ[x][y] = mor
            pred[y][x] = mor

        for x, targets in self.succ.items():
            mx = self.objs[x][2]
            for y, f in targets.items():
                my = self.objs[y][2]
                for s in (0, 1):
                    for (sig, tau), mor in step.tensor(mx, my, f, s, s).items():
                        link(ids[(x, s, sig)], ids[(y, s, tau)], mor)
        for x, (_, _, m) in self.objs.items():
            for (sig, tau), mor in step.tensor(m, m, ID, 0, 1).items():
                link(ids[(x, 0, sig)], ids[(x, 1, tau)], mor)
        self.objs, self.succ, self.pred = objs, succ, pred
        self.boundary = step.boundary
        self.eliminate()

    def eliminate(self):
        objs, succ, pred = self.objs, self.succ, self.pred
        work = [(b, c) for b, ts in succ.items() for c, f in ts.items() if f == ID]
        while work:
            b, c = work.pop()
            if b not in objs or c not in objs or succ[b].get(c) != ID:
                continue
            ob, oc = objs[b], objs[c]
            if ob[1] != oc[1] or ob[2] != oc[2]:
                continue
            m = oc[2]
            xs = [(x, g) for x, g in pred[c].items() if x != b]
            ys = [(y, h) for y, h in succ[b].items() if y != c]
            for x, g in xs:
                mx = objs[x][2]
                row = succ[x]
                for y, h in ys:
                    comp = compose(mx, m, objs[y][2], g, h)
                    if not comp:
                        continue
                    new = row.get(y, frozenset()) ^ comp
                    if new:
                        row[y] = new
                        pred[y][x] = new
                        if new == ID:
                            work.append((x, y))
                    else:
                        row.pop(y, None)
                        pred[y].pop(x, None)
            for z in (b, c):
                for y in succ[z]:
                    pred[y].pop(z, None)
                for x in pred[z]:
                    succ[x].pop(z, None)
                del objs[z], succ[z], pred[z]


def _cut(d: Diagram):
    """Crossing tuples with the basepoint edge split into two boundary points."""
    tuples = [list(t) for t in d.tuples()]
    e = d.basepoint
    seen = False
    for t in tuples:
        for s in range(4):
            if t[s] == e:
                if seen:
                    t[s] = -e
                seen = True
    return [tuple(t) for t in tuples]


def scan(d: Diagram):
    """Run the scanning reduction; returns the final simplified complex."""
    cx = _Complex()
    for labels in _cut(d):
        cx.add_crossing(labels)
    return cx


def homology_fast(d: Diagram, reduced: bool = True) -> RankTable:
    """Same table as ``homology(build_complex(d, reduced))``, much faster."""
    if reduced and d.components != 1:
        raise PDValidationError("reduced homology needs a single-component diagram")
    if d.components != 1:
        raise PDValidationError("the scanning path handles knots only")
    if not d.crossings:
        if reduced:
            return RankTable({(0, 0): 1}, True)
        return RankTable({(0, 1): 1, (0, -1): 1}, False)
    cx = scan(d)
    di, dj = -d.n_minus, d.n_plus - 2 * d.n_minus
    # every object is now the single arc through the cut basepoint; its two
    # closures are 1 (q + 1) and x (q - 1); a dot multiplies by x
    gens = defaultdict(list)
    where = {}
    labels = ((0, -1),) if reduced else ((1, 1), (0, -1))
    for oid, (i, q, _) in cx.objs.items():
        for lbl, dq in labels:
            g = (i + di, q + dq + dj + (1 if reduced else 0))
            where[(oid, lbl)] = (g, len(gens[g]))
            gens[g].append((oid, lbl))
    entries = defaultdict(list)
    for x, targets in cx.succ.items():
        for y, mor in targets.items():
            for lbl, _ in labels:
                g, col = where[(x, lbl)]
                for term in mor:
                    if term:  # dotted: 1 -> x, x -> 0
                        if lbl == 1:
                            entries[g].append((where[(y, 0)][1], col))
                    else:
                        entries[g].append((where[(y, lbl)][1], col))
    table = {}
    mats = {}
    for (i, j), cols in gens.items():
        rows = len(gens.get((i + 1, j), ()))
        mats[(i, j)] = f2.F2Matrix.from_entries(rows, len(cols), entries[(i, j)])
    for (i, j), m in mats.items():
        prev = mats.get((i - 1, j))
        d_in = prev if prev is not None else f2.F2Matrix.zeros(m.cols, 0)
        table[(i, j)] = f2.homology_rank(d_in, m)
    return RankTable(table, reduced)
