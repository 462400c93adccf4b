"""Recoloring between any two 5-colorings of a plane graph.

``theorem2`` moves a 5-coloring to a coloring that uses at most four colors:
pick a large monochromatic independent set I of low-degree vertices, make
it good, collapse it away, recurse on the smaller graph, lift the result
back, then finish on the 3-colorable graph left after removing the target's
color class containing I.  ``theorem_main`` joins two such runs through a
common 4-coloring, using that every K-change is an involution.
"""

from __future__ import annotations

import heapq
import math
import random
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .coloring import Coloring, KempeMove, chain_of, flip, proper, reverse_sequence, swap_moves
from .collapse import good_stack, lift_sequence
from .errors import InvalidColoringError, PaperViolation
from .fisk_mohar import prop_m1
from .oracle import shortest_sequence
from .plane_graph import PlaneGraph, low_degree_vertices

COLORS = (1, 2, 3, 4, 5)
BASE_N = 8


@dataclass(frozen=True)
class IndependentSetChoice:
    I: tuple[int, ...]
    alpha_color: int
    beta_color: int


def find_monochromatic_independent_set(g: PlaneGraph, alpha: Coloring, beta: Coloring) -> IndependentSetChoice:
    """Largest cell of low-degree vertices with fixed colors in both colorings.

    Ties go to the smallest (alpha color, beta color).  A cell is
    independent because alpha is proper.
    """
    S = low_degree_vertices(g)
    n = g.n
    if 7 * len(S) <= n:
        raise PaperViolation("planar graph with too few vertices of degree at most 6", {"n": n, "S": len(S)})
    cells: dict[tuple[int, int], list[int]] = {}
    for v in S:
        cells.setdefault((alpha[v], beta[v]), []).append(v)
    (i, j), I = min(cells.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    if len(I) < max(1, math.ceil(n / 140)):
        raise PaperViolation("independent set below n/140", {"n": n, "I": len(I)})
    if any(u in g.adj[v] for v in I for u in I):
        raise PaperViolation("independent set has an edge", {"I": sorted(I)})
    return IndependentSetChoice(tuple(sorted(I)), i, j)


# ---------------------------------------------------------------------------
# exact 4-coloring


def four_coloring(g: PlaneGraph, forbidden: int | None = None, budget: int = 200_000) -> Coloring:
    """A proper coloring from the four colors of 1..5 other than ``forbidden``.

    Returns the lexicographically first coloring in vertex order, found by
    backtracking with forward checking.  If that search exceeds ``budget``
    nodes, a greedy colorer with Kempe interchanges takes over, and as a
    last resort an exact saturation-ordered search; their answers need not
    be lexicographically first.
    """
    if forbidden is None:
        palette = (1, 2, 3, 4)
    else:
        if forbidden not in COLORS:
            raise ValueError(f"forbidden color {forbidden} outside 1..5")
        palette = tuple(c for c in COLORS if c != forbidden)
    out = _lex_first(g, palette, budget)
    for attempt in range(_KEMPE_ATTEMPTS):
        if out is not None:
            break
        out = _kempe_greedy(g, palette, random.Random(attempt))
    if out is None:
        out = _dsatur(g, palette)
    if out is None:
        raise InvalidColoringError("no 4-coloring found; the input cannot be planar")
    return Coloring(tuple(out), 5 if forbidden is not None else 4)


class _Budget(Exception):
    pass


def _search(n: int, rec) -> bool:
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 100))
    try:
        return rec(0)
    finally:
        sys.setrecursionlimit(limit)


def _lex_first(g: PlaneGraph, palette: Sequence[int], budget: int) -> list[int] | None:
    n = g.n
    colors = [0] * n
    # remaining options of each uncolored vertex, as counts of blocking neighbours
    block = [dict.fromkeys(palette, 0) for _ in range(n)]
    nodes = [0]

    def rec(v: int) -> bool:
        if v == n:
            return True
        for c in palette:
            if block[v][c]:
                continue
            nodes[0] += 1
            if nodes[0] > budget:
                raise _Budget
            colors[v] = c
            touched = [u for u in g.adj[v] if u > v]
            for u in touched:
                block[u][c] += 1
            if all(any(not k for k in block[u].values()) for u in touched) and rec(v + 1):
                return True
            for u in touched:
                block[u][c] -= 1
        colors[v] = 0
        return False

    try:
        return colors if _search(n, rec) else None
    except _Budget:
        return None


_KEMPE_ATTEMPTS = 20


def _smallest_last(g: PlaneGraph, rng: random.Random) -> list[int]:
    deg = [g.degree(v) for v in range(g.n)]
    tie = [rng.random() for _ in range(g.n)]
    heap = [(deg[v], tie[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    gone = [False] * g.n
    order = []
    while heap:
        d, _, v = heapq.heappop(heap)
        if gone[v] or d != deg[v]:
            continue
        gone[v] = True
        order.append(v)
        for u in g.adj[v]:
            if not gone[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], tie[u], u))
    return order


def _kempe_greedy(g: PlaneGraph, palette: Sequence[int], rng: random.Random) -> list[int] | None:
    """Greedy coloring in reverse smallest-last order.

    A vertex whose colored neighbours use the whole palette frees a color by
    one Kempe interchange among the colored vertices, when one works.
    """
    colors = [0] * g.n
    for v in reversed(_smallest_last(g, rng)):
        used = {colors[u] for u in g.adj[v]}
        free = [c for c in palette if c not in used]
        if not free:
            for u in sorted(u for u in g.adj[v] if colors[u]):
                a = colors[u]
                for b in palette:
                    if b == a:
                        continue
                    flip(g.adj, colors, u, b)
                    free = [c for c in palette if all(colors[x] != c for x in g.adj[v])]
                    if free:
                        break
                    flip(g.adj, colors, u, a)
                if free:
                    break
            if not free:
                return None
        colors[v] = free[0]
    return colors


def _dsatur(g: PlaneGraph, palette: Sequence[int]) -> list[int] | None:
    n = g.n
    colors = [0] * n

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if not colors[v]:
                k = (-len({colors[u] for u in g.adj[v]} - {0}), -g.degree(v), v)
                if key is None or k < key:
                    best, key = v, k
        return best

    def rec(left: int) -> bool:
        if left == n:
            return True
        v = pick()
        used = {colors[u] for u in g.adj[v]}
        for c in palette:
            if c not in used:
                colors[v] = c
                if rec(left + 1):
                    return True
        colors[v] = 0
        return False

    return colors if _search(n, rec) else None


# ---------------------------------------------------------------------------
# the final recoloring of one class


def step4_recolor_class(g: PlaneGraph, psi: Coloring, B: Sequence[int], t: int,
                        chain_sizes: list[int] | None = None) -> tuple[Coloring, list[KempeMove]]:
    """Recolor every vertex of ``B`` to ``t``, each by a one-vertex chain."""
    colors = list(psi.colors)
    moves = []
    for b in sorted(B):
        if colors[b] == t:
            continue
        ch = chain_of(g.adj, colors, b, t)
        if chain_sizes is not None:
            chain_sizes.append(len(ch))
        if len(ch) != 1:
            raise ValueError(f"vertex {b} has a neighbour colored {t}")
        colors[b] = t
        moves.append(KempeMove(b, t))
    return Coloring(tuple(colors), max(psi.k, t)), moves


# ---------------------------------------------------------------------------
# accounting


@dataclass
class LevelRecord:
    """Counts at one recursion level.

    ``own_max`` is the largest per-vertex count over the moves made at this
    level outside Steps 2 and 3 (the initial swap, both class recolorings and
    the 4-coloring finish); it plays the role of the quadratic term.
    """

    depth: int
    n: int
    I: int
    max_recolors: int
    child_max: int
    child_n: int
    own_max: int = 0

    @property
    def is_base(self) -> bool:
        return self.I == 0

    def own_c(self) -> float:
        return self.own_max / (self.n * self.n)

    def slack(self) -> float:
        """The smallest c with max_recolors <= 3|I| + 4 child_max + c n^2."""
        return max(0.0, (self.max_recolors - 3 * self.I - 4 * self.child_max) / (self.n * self.n))


@dataclass
class RecurrenceLedger:
    """Per-level recolor counts of one run.

    The constant c is fitted as the largest ``own_max / n^2`` over the
    recursive levels.  Base-case levels (solved exactly, no independent set)
    are the initial condition of the recurrence and enter only through
    ``child_max``.
    """

    levels: list[LevelRecord] = field(default_factory=list)
    step4_chain_sizes: list[int] = field(default_factory=list)
    choices: list[IndependentSetChoice] = field(default_factory=list)

    def fitted_c(self) -> float:
        return max((lv.own_c() for lv in self.levels if not lv.is_base), default=0.0)

    def tight_c(self) -> float:
        """The smallest c for which every recursive level meets its bound."""
        return max((lv.slack() for lv in self.levels if not lv.is_base), default=0.0)

    def bound(self, lv: LevelRecord, c: float) -> float:
        if lv.is_base:
            return float(lv.max_recolors)
        return 3 * lv.I + 4 * lv.child_max + c * lv.n * lv.n

    def check(self, c: float | None = None) -> bool:
        c = self.fitted_c() if c is None else c
        return all(lv.max_recolors <= self.bound(lv, c) + 1e-9 for lv in self.levels)

    def to_dict(self) -> dict:
        c = self.fitted_c()
        return {
            "c": c,
            "tight_c": self.tight_c(),
            "levels": [
                {"n": lv.n, "I": lv.I, "max_recolors": lv.max_recolors, "bound": self.bound(lv, c),
                 "depth": lv.depth, "child_max": lv.child_max, "child_n": lv.child_n,
                 "own_max": lv.own_max, "base": lv.is_base}
                for lv in self.levels
            ],
        }


# ---------------------------------------------------------------------------
# the recursion


def _max_count(g: PlaneGraph, start: Sequence[int], moves: Sequence[KempeMove],
               own: Sequence[bool] | None = None) -> tuple[list[int], int, int]:
    """End coloring, max per-vertex count, and max count over the moves flagged ``own``."""
    colors = list(start)
    count = [0] * g.n
    mine = [0] * g.n
    for k, (v, b) in enumerate(moves):
        for x in flip(g.adj, colors, v, b):
            count[x] += 1
            if own is not None and own[k]:
                mine[x] += 1
    return colors, max(count, default=0), max(mine, default=0)


def _solve(g: PlaneGraph, alpha: list[int], beta: list[int], ledger: RecurrenceLedger,
           depth: int, base_n: int) -> tuple[list[KempeMove], int]:
    """Moves from alpha to beta (beta uses at most four colors); also the max count."""
    if alpha == beta:
        return [], 0
    if g.n <= base_n:
        seq = shortest_sequence(g, tuple(alpha), tuple(beta), 5)
        if seq is None:
            raise PaperViolation("5-coloring graph of a small plane graph is disconnected",
                                 {"graph": g.to_dict(), "alpha": alpha, "beta": beta})
        _, mx, _ = _max_count(g, alpha, seq)
        ledger.levels.append(LevelRecord(depth, g.n, 0, mx, 0, 0, mx))
        return seq, mx
    if not g.is_connected():
        out: list[KempeMove] = []
        mx = 0
        for comp in g.components:
            sub, keep = g.induced(comp)
            seq, m = _solve(sub, [alpha[v] for v in keep], [beta[v] for v in keep], ledger, depth, base_n)
            out.extend(KempeMove(keep[v], c) for v, c in seq)
            mx = max(mx, m)
        return out, mx

    # step 1: a monochromatic independent set, moved to the color beta lacks
    choice = find_monochromatic_independent_set(g, Coloring(tuple(alpha), 5), Coloring(tuple(beta), 5))
    ledger.choices.append(choice)
    I, i, j = choice.I, choice.alpha_color, choice.beta_color
    m = min(set(COLORS) - set(beta))
    cur = list(alpha)
    moves: list[KempeMove] = []
    if i != m:
        moves += swap_moves(g.adj, cur, i, m)
    recursive_from = len(moves)

    # step 2: make I good and collapse it away
    st = good_stack(g, Coloring(tuple(cur), 5), I)
    moves += st.moves
    cur = list(st.psi.colors)

    # step 3: recurse on the collapsed graph, then lift level by level
    h = st.final_graph
    target = four_coloring(h, forbidden=m)
    sub, child_max = _solve(h, list(st.final_coloring.colors), list(target.colors), ledger, depth + 1, base_n)
    graphs = [lv[0] for lv in st.levels] + [h]
    for k in range(len(st.levels) - 1, -1, -1):
        gk, rec, end = st.levels[k]
        sub = lift_sequence(rec, gk, end, sub, graphs[k + 1])
    moves += sub
    for v, b in sub:
        flip(g.adj, cur, v, b)
    in_I = set(I)
    if any(cur[x] == m for x in range(g.n) if x not in in_I):
        raise PaperViolation("lifted coloring uses the reserved color outside I")

    # step 4: park the beta class of I on color m, finish on the rest, restore the class
    recursive_to = len(moves)
    B = [x for x in range(g.n) if beta[x] == j]
    psi, mv = step4_recolor_class(g, Coloring(tuple(cur), 5), B, m, ledger.step4_chain_sizes)
    moves += mv
    cur = list(psi.colors)
    rest = [x for x in range(g.n) if beta[x] != j]
    if rest:
        gr, keep = g.induced(rest)
        palette = [c for c in COLORS if c != m]
        seq = prop_m1(gr, Coloring(tuple(cur[x] for x in keep), 5), Coloring(tuple(beta[x] for x in keep), 5),
                      palette=palette)
        for v, b in seq:
            moves.append(KempeMove(keep[v], b))
            done = flip(g.adj, cur, keep[v], b)
            assert all(beta[x] != j for x in done)
    psi, mv = step4_recolor_class(g, Coloring(tuple(cur), 5), B, j, ledger.step4_chain_sizes)
    moves += mv

    own = [not recursive_from <= k < recursive_to for k in range(len(moves))]
    end, mx, own_max = _max_count(g, alpha, moves, own)
    if end != list(beta):
        raise PaperViolation("recursion level does not reach its target", {"depth": depth, "n": g.n})
    ledger.levels.append(LevelRecord(depth, g.n, len(I), mx, child_max, h.n, own_max))
    return moves, mx


def _check_inputs(g: PlaneGraph, alpha: Coloring, beta: Coloring, four: bool) -> None:
    for name, phi in (("alpha", alpha), ("beta", beta)):
        if len(phi) != g.n:
            raise InvalidColoringError(f"{name} has {len(phi)} entries for {g.n} vertices")
        if any(c not in COLORS for c in phi.colors):
            raise InvalidColoringError(f"{name} uses a color outside 1..5")
        if not proper(g.adj, phi.colors):
            raise InvalidColoringError(f"{name} is not proper")
    if four and len(set(beta.colors)) > 4:
        raise InvalidColoringError("beta must use at most four colors")


def theorem2(g: PlaneGraph, alpha: Coloring, beta: Coloring,
             base_n: int = BASE_N) -> tuple[list[KempeMove], RecurrenceLedger]:
    """K-changes from a 5-coloring alpha to a coloring beta using at most four colors."""
    _check_inputs(g, alpha, beta, four=True)
    ledger = RecurrenceLedger()
    seq, _ = _solve(g, list(alpha.colors), list(beta.colors), ledger, 0, base_n)
    return seq, ledger


def theorem_main(g: PlaneGraph, alpha: Coloring, beta: Coloring, base_n: int = BASE_N,
                 ledgers: list[RecurrenceLedger] | None = None) -> list[KempeMove]:
    """K-changes between any two proper 5-colorings, through a common 4-coloring."""
    _check_inputs(g, alpha, beta, four=False)
    gamma = four_coloring(g)
    s1, l1 = theorem2(g, alpha, gamma, base_n)
    s2, l2 = theorem2(g, beta, gamma, base_n)
    if ledgers is not None:
        ledgers.extend([l1, l2])
    seq = s1 + reverse_sequence(g, beta, s2)
    end, _, _ = _max_count(g, alpha.colors, seq)
    if tuple(end) != beta.colors:
        raise PaperViolation("joined sequence does not reach beta")
    return seq
