"""Good vertices, collapsing a low-degree vertex, and lifting sequences back.

Collapsing ``v`` (degree at most 6) identifies same-colored neighbours of
``v`` until ``v`` keeps at most four distinct neighbours.  The identified
graph with ``v`` kept need not be planar, so the surgery returns the graph
with ``v`` removed, ``H = N' - v``, together with a :class:`CollapseRecord`
holding the vertex map and the images of ``v``'s neighbours.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Union

from .coloring import Coloring, KempeMove, chain_of, flip
from .errors import PaperViolation, SequenceError, SurgeryError
from .plane_graph import PlaneGraph, RotationBuilder, _compact, _identify_raw


@dataclass(frozen=True)
class Triple:
    u: int
    w: int
    z: int

    @property
    def groups(self) -> tuple[tuple[int, ...], ...]:
        return ((self.u, self.w, self.z),)


@dataclass(frozen=True)
class Pairs:
    first: tuple[int, int]
    second: tuple[int, int]

    @property
    def groups(self) -> tuple[tuple[int, ...], ...]:
        return (self.first, self.second)


GoodWitness = Union[Triple, Pairs]


@dataclass(frozen=True)
class CollapseRecord:
    v: int
    vmap: tuple[int | None, ...]
    preimages: tuple[tuple[int, ...], ...]
    case: str
    v_neighbors: tuple[int, ...]

    @property
    def degree_after(self) -> int:
        return len(self.v_neighbors)

    def to_dict(self) -> dict:
        return {"v": self.v, "vmap": list(self.vmap), "case": self.case}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# ---------------------------------------------------------------------------
# goodness


def _interleave(p: tuple[int, int], q: tuple[int, int]) -> bool:
    lo, hi = sorted(p)
    return (lo < q[0] < hi) != (lo < q[1] < hi)


def _witness(rot: Sequence[int], colors: Sequence[int]) -> GoodWitness | None:
    pos = {x: i for i, x in enumerate(rot)}
    nb = sorted(rot)
    for t in combinations(nb, 3):
        if colors[t[0]] == colors[t[1]] == colors[t[2]]:
            return Triple(*t)
    pairs = [p for p in combinations(nb, 2) if colors[p[0]] == colors[p[1]]]
    for p, q in combinations(pairs, 2):
        if set(p) & set(q):
            continue
        if not _interleave((pos[p[0]], pos[p[1]]), (pos[q[0]], pos[q[1]])):
            return Pairs(p, q)
    return None


def good_witness(n: PlaneGraph, phi: Coloring, v: int) -> GoodWitness | None:
    """Three alike neighbours of ``v``, or two alike non-crossing pairs.

    Triples win over pairs; among each kind the lexicographically smallest
    choice of vertex ids is returned.
    """
    if n.degree(v) != 6:
        raise ValueError(f"goodness is defined for degree 6; vertex {v} has degree {n.degree(v)}")
    return _witness(n.rotations[v], phi.colors)


def is_good(n: PlaneGraph, phi: Coloring, v: int) -> bool:
    return n.degree(v) != 6 or good_witness(n, phi, v) is not None


def _moves_near(n: PlaneGraph, colors: Sequence[int], v: int, avoid: int) -> list[tuple[KempeMove, tuple[int, ...]]]:
    """Distinct K-changes on chains through a neighbour of ``v`` that never touch ``avoid``."""
    out = {}
    for x in n.rotations[v]:
        for b in range(1, 6):
            if b in (colors[x], avoid):
                continue
            new = list(colors)
            ch = flip(n.adj, new, x, b)
            u = min(ch)
            mv = KempeMove(u, new[u])
            out.setdefault(mv, tuple(new))
    return sorted(out.items())


def make_good(n: PlaneGraph, phi: Coloring, v: int, max_moves: int = 3) -> tuple[Coloring, list[KempeMove]]:
    """At most three K-changes making ``v`` good, none involving color ``phi(v)``.

    Breadth-first over sequences, shorter first and lowest canonical move
    first; chains are global but must pass through a neighbour of ``v``.
    """
    if n.degree(v) != 6:
        raise ValueError(f"vertex {v} has degree {n.degree(v)}, not 6")
    start = phi.colors
    if _witness(n.rotations[v], start) is not None:
        return phi, []
    c = start[v]
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], KempeMove] | None] = {start: None}
    queue = deque([(start, 0)])
    while queue:
        s, d = queue.popleft()
        if d == max_moves:
            continue
        for mv, t in _moves_near(n, s, v, c):
            if t in parent:
                continue
            parent[t] = (s, mv)
            if _witness(n.rotations[v], t) is not None:
                seq = []
                x = t
                while parent[x] is not None:
                    prev, m = parent[x]
                    seq.append(m)
                    x = prev
                seq.reverse()
                assert len(seq) <= max_moves
                assert all(t[y] == start[y] or t[y] != c for y in range(n.n))
                return Coloring(t, phi.k), seq
            queue.append((t, d + 1))
    raise PaperViolation(
        f"no sequence of at most {max_moves} K-changes makes vertex {v} good",
        {"v": v, "neighbor_colors": [start[x] for x in n.rotations[v]], "color": c},
    )


# ---------------------------------------------------------------------------
# collapsing


def _dart_face(rot: list[list[int]], u: int, w: int) -> set[tuple[int, int]]:
    out = set()
    d = (u, w)
    while d not in out:
        out.add(d)
        r = rot[d[1]]
        d = (d[1], r[(r.index(d[0]) + 1) % len(r)])
    return out


def _linked(rot: list[list[int]], u: int, w: int) -> bool:
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == w:
            return True
        for y in rot[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def _identify_groups(n: PlaneGraph, v: int, groups: Sequence[Sequence[int]]) -> tuple[PlaneGraph, list[int | None]]:
    """Delete ``v`` and identify each group of its neighbours inside v's face.

    Every neighbour gets a pendant marker where ``v`` used to be, so chords
    can be drawn at exactly those corners.
    """
    b = RotationBuilder(n)
    markers: dict[int, list[int]] = {}
    for x in n.rotations[v]:
        m = b.add_vertex()
        r = b.rot[x]
        r[r.index(v)] = m
        b.rot[m] = [x]
        markers[x] = [m]
    b.rot[v] = []
    dead = {v} | {m for ms in markers.values() for m in ms}
    merged_into: dict[int, int] = {}
    for grp in groups:
        cur = grp[0]
        for y in grp[1:]:
            pick = None
            for mx in markers[cur]:
                face = _dart_face(b.rot, mx, cur)
                for my in markers[y]:
                    if (my, y) in face:
                        pick = (mx, my)
                        break
                if pick:
                    break
            if pick is None and not _linked(b.rot, cur, y):
                # different components: any corners will do
                pick = (markers[cur][0], markers[y][0])
            if pick is None:
                raise SurgeryError(f"neighbours {cur} and {y} of {v} no longer share a face")
            keep, gone = (cur, y) if cur < y else (y, cur)
            ck, cg = (pick[0], pick[1]) if cur < y else (pick[1], pick[0])
            _identify_raw(b, keep, gone, ck, cg)
            markers[keep] = markers[keep] + markers.pop(gone)
            merged_into[gone] = keep
            dead.add(gone)
            for g2, k2 in list(merged_into.items()):
                if k2 == gone:
                    merged_into[g2] = keep
            cur = keep
    for ms in markers.values():
        for m in ms:
            b.rot[b.rot[m][0]].remove(m)
            b.rot[m] = []
    h, vmap = _compact(b.rot, dead)
    vmap = vmap[: n.n]
    for gone, keep in merged_into.items():
        vmap[gone] = vmap[keep]
    vmap[v] = None
    return h, vmap


def collapse(n: PlaneGraph, v: int, phi: Coloring) -> tuple[PlaneGraph, Coloring, CollapseRecord]:
    """Collapse ``v``; returns ``(N' - v, phi' on it, record)``."""
    d = n.degree(v)
    rot = n.rotations[v]
    if d > 6:
        raise ValueError(f"cannot collapse vertex {v} of degree {d}")
    if d <= 4:
        groups: tuple[tuple[int, ...], ...] = ()
        case = "small"
    elif d == 5:
        pair = next((p for p in combinations(sorted(rot), 2) if phi[p[0]] == phi[p[1]]), None)
        if pair is None:
            raise ValueError(f"no two neighbours of {v} share a color")
        groups = (pair,)
        case = "d5"
    else:
        wit = _witness(rot, phi.colors)
        if wit is None:
            raise ValueError(f"vertex {v} is not good")
        groups = wit.groups
        case = "d6-triple" if isinstance(wit, Triple) else "d6-pairs"
    for grp in groups:
        if len({phi[x] for x in grp}) != 1:
            raise ValueError("identified neighbours must share a color")
    h, vmap = _identify_groups(n, v, groups)
    pre: list[list[int]] = [[] for _ in range(h.n)]
    for x, y in enumerate(vmap):
        if y is not None:
            pre[y].append(x)
    colors = tuple(phi[p[0]] for p in pre)
    assert all(phi[x] == colors[y] for y, p in enumerate(pre) for x in p)
    nbrs = tuple(sorted({vmap[x] for x in rot}))
    assert len(nbrs) <= 4
    record = CollapseRecord(v, tuple(vmap), tuple(tuple(p) for p in pre), case, nbrs)
    return h, Coloring(colors, phi.k), record


# ---------------------------------------------------------------------------
# lifting


def lift_sequence(record: CollapseRecord, n: PlaneGraph, phi: Coloring, seq: Sequence[KempeMove],
                  h: PlaneGraph) -> list[KempeMove]:
    """Turn a sequence valid in ``h = N' - v`` into one valid in ``n``.

    Each move is replayed at every preimage of its chain not yet at its new
    color, lowest id first.  When the move would give a neighbour of ``v``
    the color of ``v``, ``v`` first moves to the lowest color missing from
    its closed neighbourhood.  If no such color exists, every neighbour of
    ``v`` in the two colors lies on the chain and ``v`` simply flips with it.
    """
    v = record.v
    cn = list(phi.colors)
    ch_colors = [cn[p[0]] for p in record.preimages]
    if any(cn[x] != ch_colors[y] for y, p in enumerate(record.preimages) for x in p):
        raise ValueError("coloring is not constant on the preimage classes")
    out: list[KempeMove] = []
    for i, (x, b) in enumerate(seq):
        if not 0 <= x < h.n:
            raise SequenceError(f"move {i}: vertex {x} out of range", index=i)
        a = ch_colors[x]
        if a == b:
            raise SequenceError(f"move {i}: vertex {x} already has color {b}", index=i)
        chain = chain_of(h.adj, ch_colors, x, b)
        pre = sorted(p for y in chain for p in record.preimages[y])
        pre_set = set(pre)
        cv = cn[v]
        if cv in (a, b) and any(u in pre_set for u in n.adj[v]):
            near = {cn[u] for u in n.adj[v]} | {cv}
            free = [c for c in range(1, phi.k + 1) if c not in near]
            if free:
                out.append(KempeMove(v, free[0]))
                cn[v] = free[0]
            elif any(cn[u] in (a, b) and u not in pre_set for u in n.adj[v]):
                raise PaperViolation("no free color for the collapsed vertex", {"v": v, "move": i})
        target = {p: (b if cn[p] == a else a) for p in pre}
        for p in pre:
            if cn[p] != target[p]:
                done = flip(n.adj, cn, p, target[p])
                out.append(KempeMove(p, target[p]))
                assert set(done) <= pre_set | {v}
        for y in chain:
            ch_colors[y] = b if ch_colors[y] == a else a
    return out


# ---------------------------------------------------------------------------
# making an independent set good


@dataclass
class GoodStack:
    """Result of making a set good, with the collapse chain it produced.

    ``levels[i] = (graph N_i, record, end coloring of N_i)`` where
    ``N_0`` is the input graph and ``N_{i+1} = N_i' - v_i``.
    """

    psi: Coloring
    moves: list[KempeMove]
    levels: list[tuple[PlaneGraph, CollapseRecord, Coloring]]
    final_graph: PlaneGraph
    final_coloring: Coloring
    final_ids: list[int | None]


def good_stack(n: PlaneGraph, phi: Coloring, vertices: Sequence[int]) -> GoodStack:
    I = sorted(set(vertices))
    if not I:
        return GoodStack(phi, [], [], n, phi, list(range(n.n)))
    c = phi[I[0]]
    for x in I:
        if phi[x] != c or n.degree(x) > 6:
            raise ValueError("the set must be monochromatic with degrees at most 6")
        if any(y in n.adj[x] for y in I):
            raise ValueError("the set must be independent")
    graphs, goods, records, own = [n], [], [], []
    f = phi
    ids: list[int | None] = list(range(n.n))
    for x in I:
        g = graphs[-1]
        cur = ids[x]
        seq: list[KempeMove] = []
        if g.degree(cur) == 6:
            f, seq = make_good(g, f, cur)
        own.append(seq)
        goods.append(f)
        h, f, rec = collapse(g, cur, f)
        records.append(rec)
        graphs.append(h)
        ids = [None if y is None else rec.vmap[y] for y in ids]
    # unwind from the deepest level, lifting the tail one level at a time
    tail: list[KempeMove] = []
    ends = [f]
    for i in range(len(I) - 1, -1, -1):
        g = graphs[i]
        lifted = lift_sequence(records[i], g, goods[i], tail, graphs[i + 1])
        cols = list(goods[i].colors)
        for mv in lifted:
            flip(g.adj, cols, *mv)
        ends.append(Coloring(tuple(cols), phi.k))
        tail = own[i] + lifted
    ends.reverse()
    levels = [(graphs[i], records[i], ends[i]) for i in range(len(I))]
    return GoodStack(ends[0], tail, levels, graphs[-1], ends[-1], ids)


def make_all_good(n: PlaneGraph, phi: Coloring, vertices: Sequence[int]) -> tuple[Coloring, list[KempeMove]]:
    """Make every degree-6 vertex of a monochromatic independent set good.

    Each vertex is recolored at most three times per member of the set, and
    no vertex ever takes the color of the set.
    """
    st = good_stack(n, phi, vertices)
    I = set(vertices)
    if I:
        c = phi[min(I)]
        cols = list(phi.colors)
        count = [0] * n.n
        for v, b in st.moves:
            for x in flip(n.adj, cols, v, b):
                count[x] += 1
                if cols[x] == c:
                    raise PaperViolation("a vertex took the color of the set")
        if max(count, default=0) > 3 * len(I):
            raise PaperViolation("a vertex was recolored more than 3|I| times")
        # goodness holds in the graph where each vertex gets collapsed
        assert all(is_good(g, end, rec.v) for g, rec, end in st.levels)
    return st.psi, st.moves
