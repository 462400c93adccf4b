"""4-colorings of 3-colorable planar graphs.

Pipeline: fill every face so that the graph becomes a 3-colorable
triangulation carrying both the target 3-coloring and the current 4-coloring
(after a few K-changes), then remove non-singular edges one region swap at a
time until a 3-coloring is reached.  Moves made in the triangulation are
projected back to the original graph chain by chain.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .coloring import Coloring, KempeMove, chain_of, flip, proper, swap_moves
from .errors import InvalidColoringError, InvalidGraphError, PaperViolation
from .filling import FaceFiller, walk_class
from .oracle import shortest_sequence
from .plane_graph import Face, PlaneGraph, RotationBuilder, faces, is_triangulation, validate

PALETTE = (1, 2, 3, 4)


# ---------------------------------------------------------------------------
# singular edges


def edge_apexes(g: PlaneGraph, x: int, y: int) -> tuple[int, int]:
    """Third vertices of the two triangles on edge xy."""
    if not g.has_edge(x, y):
        raise InvalidGraphError(f"{x}-{y} is not an edge")
    w = g.succ(y, x)
    z = g.succ(x, y)
    if g.succ(w, y) != x or g.succ(z, x) != y:
        raise InvalidGraphError(f"edge {x}-{y} does not lie on two triangles")
    return w, z


def is_singular(g: PlaneGraph, f: Coloring, e: tuple[int, int]) -> bool:
    w, z = edge_apexes(g, *e)
    return f.colors[w] == f.colors[z]


def nonsingular_edges(g: PlaneGraph, colors: Sequence[int]) -> list[tuple[int, int]]:
    out = []
    for x, y in g.edges:
        w, z = g.succ(y, x), g.succ(x, y)
        if colors[w] != colors[z]:
            out.append((x, y))
    return out


# ---------------------------------------------------------------------------
# region cycles


@dataclass(frozen=True)
class RegionSwap:
    boundary: tuple[int, ...]
    interior: frozenset[int]
    edge_colors: tuple[int, int]
    swapped: tuple[int, int]


def _core(rot: dict[int, list[int]]) -> dict[int, list[int]]:
    rot = {v: list(r) for v, r in rot.items() if r}
    low = [v for v, r in rot.items() if len(r) <= 1]
    while low:
        v = low.pop()
        if v not in rot:
            continue
        for u in rot.pop(v):
            if u in rot:
                rot[u].remove(v)
                if len(rot[u]) <= 1:
                    low.append(u)
    return {v: r for v, r in rot.items() if r}


def _sub_faces(rot: dict[int, list[int]]) -> list[list[tuple[int, int]]]:
    seen: set[tuple[int, int]] = set()
    out = []
    for v in sorted(rot):
        for u in rot[v]:
            d = (v, u)
            if d in seen:
                continue
            walk = []
            while d not in seen:
                seen.add(d)
                walk.append(d)
                a, b = d
                r = rot[b]
                d = (b, r[(r.index(a) + 1) % len(r)])
            out.append(walk)
    return out


def _enclosed(g: PlaneGraph, darts: list[tuple[int, int]], sub: dict[int, list[int]]) -> frozenset[int]:
    """Vertices of g strictly inside the face of ``sub`` traced by ``darts``."""
    on = {a for a, _ in darts}
    seeds = []
    for u, v in darts:
        r = sub[v]
        w = r[(r.index(u) + 1) % len(r)]
        x = g.succ(v, u)
        while x != w:
            if x not in on:
                seeds.append(x)
            x = g.succ(v, x)
    inside = set(seeds)
    stack = list(seeds)
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y not in on and y not in inside:
                inside.add(y)
                stack.append(y)
    return frozenset(inside)


def find_region_cycle(g: PlaneGraph, f: Coloring | Sequence[int], pair: tuple[int, int]) -> RegionSwap:
    """Innermost cycle of non-singular edges colored ``pair``, with its interior."""
    colors = f.colors if isinstance(f, Coloring) else f
    want = set(pair)
    edges = [(x, y) for x, y in nonsingular_edges(g, colors) if {colors[x], colors[y]} == want]
    if not edges:
        raise ValueError(f"no non-singular edge is colored {sorted(want)}")
    es = set(edges)
    rot = {v: [] for e in edges for v in e}
    for v in rot:
        rot[v] = [u for u in g.rotations[v] if (min(u, v), max(u, v)) in es]
    core = _core(rot)
    if not core:
        raise PaperViolation("non-singular edges of one color contain no cycle",
                             {"pair": sorted(want), "edges": edges})
    best = None
    for darts in _sub_faces(core):
        cyc = [a for a, _ in darts]
        if len(set(cyc)) != len(cyc) or len(cyc) < 3:
            continue
        inside = _enclosed(g, darts, core)
        key = (len(inside), min(cyc), tuple(cyc))
        if best is None or key < best[0]:
            best = (key, cyc, inside)
    if best is None:
        raise PaperViolation("no face of the non-singular subgraph is a simple cycle",
                             {"pair": sorted(want)})
    _, cyc, inside = best
    lo = min(range(len(cyc)), key=cyc.__getitem__)
    cyc = cyc[lo:] + cyc[:lo]
    other = tuple(sorted(set(PALETTE) - want))
    return RegionSwap(tuple(cyc), inside, tuple(sorted(want)), other)


# ---------------------------------------------------------------------------
# reduction to the 3-coloring


class FiskResult(NamedTuple):
    moves: list[KempeMove]
    coloring: Coloring
    history: list[int]


def fisk_reduce(g: PlaneGraph, f: Coloring) -> FiskResult:
    """K-changes taking a 4-coloring of a 3-colorable triangulation to a 3-coloring.

    ``history`` lists the number of non-singular edges before each region
    swap and once more at the end.
    """
    if not is_triangulation(g):
        raise InvalidGraphError("fisk_reduce needs a triangulation")
    if not proper(g.adj, f.colors) or any(c not in PALETTE for c in f.colors):
        raise InvalidColoringError("fisk_reduce needs a proper coloring with colors 1..4")
    colors = list(f.colors)
    moves: list[KempeMove] = []
    history = []
    count = len(nonsingular_edges(g, colors))
    while count:
        history.append(count)
        if len(history) > g.num_edges:
            raise PaperViolation("more region swaps than edges", {"history": history})
        x, y = nonsingular_edges(g, colors)[0]
        region = find_region_cycle(g, colors, (colors[x], colors[y]))
        moves.extend(_swap_inside(g, colors, region))
        new = len(nonsingular_edges(g, colors))
        if new >= count:
            raise PaperViolation("region swap did not reduce the non-singular edges",
                                 {"before": count, "after": new, "cycle": list(region.boundary)})
        count = new
    history.append(0)
    if len(set(colors)) > 3:
        raise PaperViolation("all edges singular but four colors remain", {"colors": colors})
    return FiskResult(moves, Coloring(tuple(colors), f.k), history)


def _swap_inside(g: PlaneGraph, colors: list[int], region: RegionSwap) -> list[KempeMove]:
    c, d = region.swapped
    done: set[int] = set()
    out = []
    for v in sorted(region.interior):
        if v in done or colors[v] not in (c, d):
            continue
        to = d if colors[v] == c else c
        ch = flip(g.adj, colors, v, to)
        if not region.interior.issuperset(ch):
            raise PaperViolation("a swapped chain leaves the region", {"vertex": v})
        done.update(ch)
        out.append(KempeMove(v, to))
    return out


# ---------------------------------------------------------------------------
# exact 3-coloring


def three_coloring(g: PlaneGraph) -> Coloring | None:
    """A proper 3-coloring by DSatur-ordered backtracking, or None."""
    n = g.n
    colors = [0] * n
    if n == 0:
        return Coloring((), 3)

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if colors[v]:
                continue
            sat = len({colors[u] for u in g.adj[v] if colors[u]})
            k = (-sat, -g.degree(v), v)
            if key is None or k < key:
                best, key = v, k
        return best

    def rec(left: int) -> bool:
        if not left:
            return True
        v = pick()
        used = {colors[u] for u in g.adj[v]}
        for c in (1, 2, 3):
            if c not in used:
                colors[v] = c
                if rec(left - 1):
                    return True
        colors[v] = 0
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 100))
    try:
        ok = rec(n)
    finally:
        sys.setrecursionlimit(limit)
    return Coloring(tuple(colors), 3) if ok else None


# ---------------------------------------------------------------------------
# face filling with a bounded K-change prefix


def _pairs(walk, three, four):
    return [(three[v], four[v]) for v in walk]


def fixing_prefix(
    rot: Sequence[Sequence[int]], three: Sequence[int], four: Sequence[int], walk: Sequence[int], depth: int = 3
) -> list[KempeMove]:
    """Shortest K-change sequence (chains meeting the walk) making the face fillable."""
    if walk_class(_pairs(walk, three, four)) == (0, 0):
        return []
    start = tuple(four)
    spots = sorted(set(walk))
    parent: dict[tuple, tuple] = {start: None}
    level = [start]
    for _ in range(depth):
        nxt = []
        for s in level:
            tried = set()
            for v in spots:
                for b in PALETTE:
                    if b == s[v]:
                        continue
                    ch = chain_of(rot, s, v, b)
                    key = (min(ch), frozenset((s[v], b)))
                    if key in tried:
                        continue
                    tried.add(key)
                    t = list(s)
                    for x in ch:
                        t[x] = b if t[x] == s[v] else s[v]
                    t = tuple(t)
                    if t in parent:
                        continue
                    parent[t] = (s, KempeMove(v, b))
                    if walk_class(_pairs(walk, three, t)) == (0, 0):
                        out = []
                        while parent[t] is not None:
                            t, mv = parent[t]
                            out.append(mv)
                        return out[::-1]
                    nxt.append(t)
        level = nxt
    raise PaperViolation(f"no K-change prefix of length <= {depth} makes the face fillable",
                         {"walk": list(walk), "pairs": _pairs(walk, three, four)})


def _project(g_adj, g_colors: list[int], chain: Sequence[int], a: int, b: int, n_g: int) -> list[KempeMove]:
    """Replay a chain swap of the big graph on its first ``n_g`` vertices."""
    members = set(chain)
    done: set[int] = set()
    out = []
    for u in sorted(chain):
        if u >= n_g or u in done:
            continue
        to = b if g_colors[u] == a else a
        ch = flip(g_adj, g_colors, u, to)
        assert members.issuperset(ch), "projected chain escapes its parent chain"
        done.update(ch)
        out.append(KempeMove(u, to))
    return out


@dataclass
class Triangulated:
    graph: PlaneGraph
    three: list[int]
    four: list[int]
    prefix: list[KempeMove]
    end: list[int]
    prefix_per_face: list[int] = field(default_factory=list)


def triangulate_with(g: PlaneGraph, three: Sequence[int], four: Sequence[int], depth: int = 3,
                     only: Sequence[Face] | None = None) -> Triangulated:
    """Fill faces of g (all of them unless ``only``), extending both colorings.

    ``three`` uses labels 1..3 and ``four`` labels 1..4.  Returns the filled
    graph, both extended colorings, the prefix as moves in g, and g's coloring
    after the prefix.
    """
    b = RotationBuilder(g)
    t3 = list(three)
    t4 = list(four)
    g4 = list(four)
    prefix: list[KempeMove] = []
    counts = []
    todo = faces(g) if only is None else list(only)
    for f in todo:
        if f.length <= 3:
            continue
        walk = list(f.vertices)
        moves = fixing_prefix(b.rot, t3, t4, walk, depth)
        counts.append(len(moves))
        for v, c in moves:
            a = t4[v]
            ch = chain_of(b.rot, t4, v, c)
            prefix.extend(_project(g.adj, g4, ch, a, c, g.n))
            for x in ch:
                t4[x] = c if t4[x] == a else a
        FaceFiller(b, walk, t3, t4).fill()
    h = b.freeze()
    validate(h)
    assert g4 == t4[: g.n]
    return Triangulated(h, t3, t4, prefix, g4, counts)


class FaceReduction(NamedTuple):
    graph: PlaneGraph
    c1: Coloring
    c2: Coloring
    prefix1: list[KempeMove]
    prefix2: list[KempeMove]


def _labels(used: set[int], size: int, k: int) -> list[int]:
    """``used`` padded with the smallest free colors up to ``size`` labels."""
    out = set(used)
    c = 1
    while len(out) < size:
        if c not in out and (c <= k or c > max(out, default=0)):
            out.add(c)
        c += 1
    return sorted(out)


def mohar_reduce_face(g: PlaneGraph, face: Face, c1: Coloring, c2: Coloring, depth: int = 3) -> FaceReduction:
    """Fill one face so that both colorings extend.

    One of the two colorings must use at most three colors on g; it extends
    unchanged as a 3-coloring.  The other gets a prefix of at most ``depth``
    K-changes (before projection to g) and then extends as a 4-coloring.
    """
    if face.length <= 3:
        return FaceReduction(g, c1, c2, [], [])
    flipped = False
    if len(set(c1.colors)) > 3:
        if len(set(c2.colors)) > 3:
            raise ValueError("one of the two colorings must use at most three colors")
        c1, c2 = c2, c1
        flipped = True
    lab3 = _labels(set(c1.colors), 3, c1.k)
    lab4 = _labels(set(c2.colors), 4, c2.k)
    if len(lab4) > 4:
        raise ValueError("colorings must use at most four colors")
    three = [lab3.index(c) + 1 for c in c1.colors]
    four = [lab4.index(c) + 1 for c in c2.colors]
    tri = triangulate_with(g, three, four, depth, only=[face])
    o1 = Coloring(tuple(lab3[c - 1] for c in tri.three), c1.k)
    o2 = Coloring(tuple(lab4[c - 1] for c in tri.four), c2.k)
    pre = [KempeMove(v, lab4[c - 1]) for v, c in tri.prefix]
    if flipped:
        return FaceReduction(tri.graph, o2, o1, pre, [])
    return FaceReduction(tri.graph, o1, o2, [], pre)


# ---------------------------------------------------------------------------
# 4-colorings of 3-colorable planar graphs


def _relabels(a: Sequence[int], b: Sequence[int]) -> bool:
    m: dict[int, int] = {}
    for x, y in zip(a, b):
        if m.setdefault(x, y) != y:
            return False
    return len(set(m.values())) == len(m)


def _to_three(g: PlaneGraph, three: list[int], four: list[int], depth: int, info: dict) -> tuple[list[KempeMove], list[int]]:
    """Moves in g from ``four`` to some relabeling of ``three``."""
    if _relabels(three, four):
        return [], list(four)
    tri = triangulate_with(g, three, four, depth)
    T = tri.graph
    if not is_triangulation(T):
        raise PaperViolation("filling left a non-triangular face")
    info.setdefault("triangulation_sizes", []).append(T.n)
    info.setdefault("prefix_lengths", []).extend(tri.prefix_per_face)
    res = fisk_reduce(T, Coloring(tuple(tri.four), 4))
    info.setdefault("fisk_iterations", []).append(len(res.history) - 1)
    moves = list(tri.prefix)
    g4 = list(tri.end)
    t4 = list(tri.four)
    for v, c in res.moves:
        a = t4[v]
        ch = chain_of(T.adj, t4, v, c)
        moves.extend(_project(g.adj, g4, ch, a, c, g.n))
        for x in ch:
            t4[x] = c if t4[x] == a else a
    assert _relabels(three, g4), "Fisk endpoint is not a relabeled 3-coloring"
    return moves, g4


def _reverse(adj, start: Sequence[int], moves: Sequence[KempeMove]) -> list[KempeMove]:
    colors = list(start)
    inv = []
    for v, c in moves:
        inv.append(KempeMove(v, colors[v]))
        flip(adj, colors, v, c)
    return inv[::-1]


def _component_sequence(g: PlaneGraph, alpha: list[int], beta: list[int], depth: int, info: dict) -> list[KempeMove]:
    """Normalised colors 1..4 on a connected graph."""
    if alpha == beta:
        return []
    if g.n <= 3:
        seq = shortest_sequence(g, tuple(alpha), tuple(beta), 4)
        if seq is None:
            raise PaperViolation("small component with disconnected 4-coloring graph")
        return seq
    if len(set(beta)) <= 3:
        base, swap = beta, False
    elif len(set(alpha)) <= 3:
        base, swap = alpha, True
        alpha, beta = beta, alpha
    else:
        c0 = three_coloring(g)
        if c0 is None:
            raise ValueError("graph is not 3-colorable")
        base, swap = list(c0.colors), False
    lab = sorted(set(base))
    three = [lab.index(c) + 1 for c in base]
    fwd, end_a = _to_three(g, three, alpha, depth, info)
    back, end_b = _to_three(g, three, beta, depth, info)
    mid = []
    cur = list(end_a)
    for v in range(g.n):
        while cur[v] != end_b[v]:
            mid.extend(swap_moves(g.adj, cur, cur[v], end_b[v]))
    info.setdefault("alignment_swaps", []).append(len(mid))
    seq = fwd + mid + _reverse(g.adj, beta, back)
    if swap:
        seq = _reverse(g.adj, alpha, seq)
    return seq


def prop_m1(g: PlaneGraph, alpha: Coloring, beta: Coloring, depth: int = 3,
            info: dict | None = None, palette: Sequence[int] | None = None) -> list[KempeMove]:
    """K-changes from alpha to beta, two 4-colorings of a 3-colorable plane graph.

    The palette is ``palette`` when given (four colors covering both
    colorings), else the colors the two colorings use, padded to four from
    1..k.  ``info`` (if given) collects triangulation sizes, prefix lengths,
    Fisk iteration counts and alignment swaps.
    """
    if info is None:
        info = {}
    if len(alpha) != g.n or len(beta) != g.n:
        raise InvalidColoringError("colorings must cover every vertex")
    if not proper(g.adj, alpha.colors) or not proper(g.adj, beta.colors):
        raise InvalidColoringError("colorings must be proper")
    k = max(alpha.k, beta.k)
    if palette is not None:
        pal = sorted(set(palette))
        if len(pal) != 4 or not set(alpha.colors) | set(beta.colors) <= set(pal):
            raise InvalidColoringError("palette must be four colors covering both colorings")
    else:
        pal = _labels(set(alpha.colors) | set(beta.colors), 4, k)
    if len(pal) > 4:
        raise InvalidColoringError("the two colorings use more than four colors together")
    a_all = [pal.index(c) + 1 for c in alpha.colors]
    b_all = [pal.index(c) + 1 for c in beta.colors]
    out: list[KempeMove] = []
    for comp in g.components:
        sub, keep = g.induced(comp)
        a = [a_all[v] for v in keep]
        b = [b_all[v] for v in keep]
        for v, c in _component_sequence(sub, a, b, depth, info):
            out.append(KempeMove(keep[v], pal[c - 1]))
    # cheap end-to-end check: the output must replay to beta
    colors = list(alpha.colors)
    for v, c in out:
        flip(g.adj, colors, v, c)
    if tuple(colors) != beta.colors:
        raise PaperViolation("prop_m1 sequence does not reach the target coloring")
    return out
