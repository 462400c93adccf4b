"""Brute-force ground truth: the reconfiguration graph of proper k-colorings.

States are color tuples internally; the canonical key of a coloring is its
base-k integer code with vertex 0 most significant, so sorting codes sorts
colorings lexicographically.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .coloring import Coloring, KempeMove, proper
from .errors import CapExceededError, InvalidColoringError
from .plane_graph import PlaneGraph

DEFAULT_CAP = 5_000_000

State = tuple[int, ...]


def encode(colors: State, k: int) -> int:
    code = 0
    for c in colors:
        code = code * k + (c - 1)
    return code


def decode(code: int, n: int, k: int) -> State:
    out = [0] * n
    for v in range(n - 1, -1, -1):
        code, r = divmod(code, k)
        out[v] = r + 1
    return tuple(out)


def _masks(g: PlaneGraph) -> tuple[int, ...]:
    return tuple(sum(1 << u for u in g.neighbors(v)) for v in range(g.n))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def neighbor_moves(nbr: tuple[int, ...], state: State, k: int) -> Iterator[tuple[KempeMove, State]]:
    """Every distinct K-change out of ``state``, keyed by its lowest chain vertex."""
    by_color = [0] * (k + 1)
    for v, c in enumerate(state):
        by_color[c] |= 1 << v
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            rem = by_color[a] | by_color[b]
            if not by_color[a] and not by_color[b]:
                continue
            while rem:
                low = rem & -rem
                comp = low
                frontier = low
                while frontier:
                    grow = 0
                    for x in _bits(frontier):
                        grow |= nbr[x]
                    frontier = grow & rem & ~comp
                    comp |= frontier
                rem &= ~comp
                new = list(state)
                for x in _bits(comp):
                    new[x] = b if new[x] == a else a
                v = low.bit_length() - 1
                yield KempeMove(v, new[v]), tuple(new)


def enumerate_proper_colorings(g: PlaneGraph, k: int, cap: int = DEFAULT_CAP) -> list[Coloring]:
    """All proper k-colorings in lexicographic order."""
    return [Coloring(s, k) for s in _enumerate(g, k, cap)]


def _enumerate(g: PlaneGraph, k: int, cap: int) -> list[State]:
    n = g.n
    # earlier neighbours only: assign in vertex order
    back = [tuple(u for u in g.neighbors(v) if u < v) for v in range(n)]
    out: list[State] = []
    cur = [0] * n

    def rec(v: int) -> None:
        if v == n:
            out.append(tuple(cur))
            if len(out) > cap:
                raise CapExceededError(f"more than {cap} proper {k}-colorings")
            return
        for c in range(1, k + 1):
            if all(cur[u] != c for u in back[v]):
                cur[v] = c
                rec(v + 1)
        cur[v] = 0

    if n > 0:
        rec(0)
    else:
        out.append(())
    return out


@dataclass
class ReconfigurationGraph:
    graph: PlaneGraph
    k: int
    nodes: list[State]
    index: dict[State, int]
    adjacency: list[list[int]]
    component: list[int] = field(default_factory=list)

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def num_components(self) -> int:
        return max(self.component, default=-1) + 1

    def node_of(self, phi: Coloring | State) -> int:
        key = phi.colors if isinstance(phi, Coloring) else tuple(phi)
        try:
            return self.index[key]
        except KeyError:
            raise InvalidColoringError("coloring is not a proper coloring of this graph") from None

    def code(self, i: int) -> int:
        return encode(self.nodes[i], self.k)

    def bfs(self, src: int) -> list[int]:
        dist = [-1] * len(self.nodes)
        dist[src] = 0
        q = deque([src])
        while q:
            x = q.popleft()
            for y in self.adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    q.append(y)
        return dist


def build_reconfiguration_graph(g: PlaneGraph, k: int, cap: int = DEFAULT_CAP) -> ReconfigurationGraph:
    nodes = _enumerate(g, k, cap)
    index = {s: i for i, s in enumerate(nodes)}
    nbr = _masks(g)
    adjacency: list[list[int]] = []
    for s in nodes:
        adjacency.append(sorted({index[t] for _, t in neighbor_moves(nbr, s, k)}))
    rg = ReconfigurationGraph(g, k, nodes, index, adjacency)
    comp = [-1] * len(nodes)
    label = 0
    for i in range(len(nodes)):
        if comp[i] >= 0:
            continue
        comp[i] = label
        stack = [i]
        while stack:
            x = stack.pop()
            for y in adjacency[x]:
                if comp[y] < 0:
                    comp[y] = label
                    stack.append(y)
        label += 1
    rg.component = comp
    return rg


def count_components(g: PlaneGraph, k: int, cap: int = DEFAULT_CAP) -> int:
    """Component count of the reconfiguration graph without storing its edges."""
    nodes = _enumerate(g, k, cap)
    nbr = _masks(g)
    seen: set[State] = set()
    count = 0
    for s in nodes:
        if s in seen:
            continue
        count += 1
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for _, t in neighbor_moves(nbr, x, k):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
    return count


def distance(rg: ReconfigurationGraph, phi1: Coloring, phi2: Coloring) -> int | None:
    """Hop count between two nodes, or None when they lie in different components."""
    i, j = rg.node_of(phi1), rg.node_of(phi2)
    if rg.component and rg.component[i] != rg.component[j]:
        return None
    d = rg.bfs(i)[j]
    return d if d >= 0 else None


def diameter_and_components(rg: ReconfigurationGraph) -> tuple[int, int]:
    """(component count, diameter of the largest component) by all-pairs BFS."""
    sizes: dict[int, int] = {}
    for c in rg.component:
        sizes[c] = sizes.get(c, 0) + 1
    largest = min(sizes, key=lambda c: (-sizes[c], c))
    diam = 0
    for i, c in enumerate(rg.component):
        if c == largest:
            diam = max(diam, max(rg.bfs(i)))
    return rg.num_components, diam


def summary(rg: ReconfigurationGraph) -> dict:
    comps, diam = diameter_and_components(rg)
    return {"components": comps, "diameter": diam, "nodes": rg.num_nodes, "edges": rg.num_edges}


# ---------------------------------------------------------------------------
# shortest paths without building the whole graph


@lru_cache(maxsize=64)
def _masks_cached(g: PlaneGraph) -> tuple[int, ...]:
    return _masks(g)


def shortest_sequence(
    g: PlaneGraph, alpha: Coloring | State, beta: Coloring | State, k: int, limit: int = DEFAULT_CAP
) -> list[KempeMove] | None:
    """A shortest K-change sequence from alpha to beta (bidirectional BFS).

    Returns None when beta is unreachable.  ``limit`` bounds the number of
    states visited.
    """
    a = alpha.colors if isinstance(alpha, Coloring) else tuple(alpha)
    b = beta.colors if isinstance(beta, Coloring) else tuple(beta)
    for s in (a, b):
        if len(s) != g.n or not proper(g.adj, s) or any(not 1 <= c <= k for c in s):
            raise InvalidColoringError("endpoints must be proper colorings of g")
    if a == b:
        return []
    nbr = _masks_cached(g)
    # parent maps: state -> (previous state, move from previous to state)
    fwd: dict[State, tuple[State, KempeMove] | None] = {a: None}
    bwd: dict[State, tuple[State, KempeMove] | None] = {b: None}
    ff, bf = [a], [b]
    while ff and bf:
        if len(fwd) + len(bwd) > limit:
            raise CapExceededError(f"path search exceeded {limit} states")
        forward = len(ff) <= len(bf)
        frontier, mine, other = (ff, fwd, bwd) if forward else (bf, bwd, fwd)
        nxt = []
        meet = None
        for s in frontier:
            for mv, t in neighbor_moves(nbr, s, k):
                if t in mine:
                    continue
                mine[t] = (s, mv)
                if t in other:
                    meet = t
                    break
                nxt.append(t)
            if meet is not None:
                break
        if meet is not None:
            return _join(fwd, bwd, meet)
        if forward:
            ff = nxt
        else:
            bf = nxt
    return None


def _join(fwd, bwd, meet: State) -> list[KempeMove]:
    head = []
    s = meet
    while fwd[s] is not None:
        prev, mv = fwd[s]
        head.append(mv)
        s = prev
    head.reverse()
    tail = []
    s = meet
    while bwd[s] is not None:
        prev, _ = bwd[s]
        # step s -> prev: same chain, lowest vertex moves back to prev's color
        v = _lowest_diff(s, prev)
        tail.append(KempeMove(v, prev[v]))
        s = prev
    return head + tail


def _lowest_diff(s: State, t: State) -> int:
    return next(v for v in range(len(s)) if s[v] != t[v])
