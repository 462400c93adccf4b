"""Triangulating a face so that a 3-coloring and a 4-coloring both extend.

A vertex carries a pair ``(s, a)``: its color ``s`` in a 3-coloring and ``a``
in a 4-coloring.  Two pairs may be adjacent iff they differ in both entries.
The triangles of that pair graph form a torus whose universal cover is the
triangular lattice, with the pair of lattice point ``(x, y)`` given by
:func:`pair_at`.  A face can be filled with new vertices (each pair chosen
freely) iff its boundary walk lifts to a closed walk in the lattice;
:func:`walk_class` returns the lift's displacement, and (0, 0) means fillable.

:class:`FaceFiller` performs the filling on a :class:`RotationBuilder`.  It
first wraps the face in a ring of fresh vertices, so that later chords never
touch the original graph, then shrinks the ring toward a lattice centre by
chords, fans and spur moves.
"""

from __future__ import annotations

from typing import Sequence

from .errors import PaperViolation
from .plane_graph import RotationBuilder

Point = tuple[int, int]

# cyclic order: consecutive directions are lattice neighbours
DIRS: tuple[Point, ...] = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def pair_at(p: Point) -> tuple[int, int]:
    x, y = p
    return ((x + 2 * y) % 3 + 1, 1 + (x % 2) + 2 * (y % 2))


# one representative point per pair, inside a fundamental domain
_ANCHOR: dict[tuple[int, int], Point] = {}
for _x in range(6):
    for _y in range(6):
        _ANCHOR.setdefault(pair_at((_x, _y)), (_x, _y))


def _add(p: Point, d: Point) -> Point:
    return (p[0] + d[0], p[1] + d[1])


def dist(p: Point, q: Point) -> int:
    dx, dy = q[0] - p[0], q[1] - p[1]
    return max(abs(dx), abs(dy), abs(dx + dy))


def hexagon(p: Point) -> list[Point]:
    return [_add(p, d) for d in DIRS]


def step(p: Point, pair: tuple[int, int]) -> Point:
    """The unique lattice neighbour of ``p`` carrying ``pair``."""
    for q in hexagon(p):
        if pair_at(q) == pair:
            return q
    raise ValueError(f"pair {pair} is not adjacent to {pair_at(p)}")


def lift(pairs: Sequence[tuple[int, int]]) -> list[Point]:
    """Lift a closed walk of pairs; the result has one extra closing point."""
    pts = [_ANCHOR[pairs[0]]]
    for pr in list(pairs[1:]) + [pairs[0]]:
        pts.append(step(pts[-1], pr))
    return pts


def walk_class(pairs: Sequence[tuple[int, int]]) -> Point:
    if len(pairs) < 2:
        return (0, 0)
    pts = lift(pairs)
    return (pts[-1][0] - pts[0][0], pts[-1][1] - pts[0][1])


class FaceFiller:
    """Fill one face of ``b`` given as its walk ``walk`` (dart order).

    ``three`` and ``four`` are the color lists of the two colorings, indexed
    by vertex; they are extended in place as vertices are added.  Colors are
    the normalised labels 1..3 and 1..4.
    """

    def __init__(self, b: RotationBuilder, walk: list[int], three: list[int], four: list[int]) -> None:
        self.b = b
        self.walk = list(walk)
        self.three = three
        self.four = four
        pairs = [(three[v], four[v]) for v in walk]
        pts = lift(pairs)
        if pts[-1] != pts[0]:
            raise PaperViolation("face boundary is not fillable for this coloring pair",
                                 {"walk": list(walk), "pairs": pairs})
        self.pts = pts[:-1]
        self.added: list[int] = []

    # -- primitives ---------------------------------------------------------

    def _fresh(self, p: Point) -> int:
        y = self.b.add_vertex()
        s, a = pair_at(p)
        self.three.append(s)
        self.four.append(a)
        self.added.append(y)
        return y

    def over(self, i: int, p: Point) -> int:
        """New vertex at ``p`` on the triangle over walk edge (i, i+1)."""
        w = self.walk
        L = len(w)
        u, v, pu = w[i], w[(i + 1) % L], w[(i - 1) % L]
        y = self._fresh(p)
        self.b.insert_after(u, pu, y)
        self.b.insert_after(v, u, y)
        self.b.rot[y] = [v, u]
        w.insert(i + 1, y)
        self.pts.insert(i + 1, p)
        return y

    def can_chord(self, m: int) -> bool:
        w = self.walk
        L = len(w)
        if L <= 3:
            return False
        a, c = w[(m - 1) % L], w[(m + 1) % L]
        return dist(self.pts[(m - 1) % L], self.pts[(m + 1) % L]) == 1 and not self.b.has_edge(a, c)

    def chord(self, m: int) -> None:
        """Join the two walk neighbours of position ``m``, closing it off."""
        w = self.walk
        L = len(w)
        a, x, c, pa = w[(m - 1) % L], w[m], w[(m + 1) % L], w[(m - 2) % L]
        self.b.insert_after(a, pa, c)
        self.b.insert_after(c, x, a)
        del w[m]
        del self.pts[m]

    def fan(self, m: int, path: Sequence[Point]) -> None:
        """Replace the walk vertex at position ``m`` by fresh vertices along ``path``."""
        for p in path:
            self.over((m - 1) % len(self.walk), p)
            if m:
                m += 1
        self.chord(m)

    def apex(self) -> bool:
        """Close the face with a single vertex when one pair fits everything."""
        w = self.walk
        if len(set(w)) != len(w):
            return False
        s_used = {self.three[v] for v in w}
        a_used = {self.four[v] for v in w}
        if len(s_used) != 2 or len(a_used) > 3:
            return False
        s = min({1, 2, 3} - s_used)
        a = min({1, 2, 3, 4} - a_used)
        y = self.b.add_vertex()
        self.three.append(s)
        self.four.append(a)
        self.added.append(y)
        L = len(w)
        for t in range(L):
            self.b.insert_after(w[t], w[t - 1], y)
        self.b.rot[y] = list(reversed(w))
        self.walk = []
        return True

    # -- strategy -----------------------------------------------------------

    def ring(self) -> None:
        """Surround the face with fresh vertices only."""
        L = len(self.walk)
        ys = []
        for t in range(L):
            i = 2 * t
            p, q = self.pts[i], self.pts[(i + 1) % len(self.pts)]
            ys.append(self.over(i, min(r for r in hexagon(p) if dist(r, q) == 1)))
        # the t-th old occurrence always sits right after ys[t - 1]
        for t in range(L):
            m = (self.walk.index(ys[t - 1]) + 1) % len(self.walk)
            n = len(self.walk)
            self.fan(m, self._around(self.pts[m], self.pts[(m - 1) % n], self.pts[(m + 1) % n]))

    @staticmethod
    def _around(P: Point, A: Point, C: Point) -> list[Point]:
        """Interior points of a short hexagon path from A to C around P."""
        h = hexagon(P)
        ia, ic = h.index(A), h.index(C)
        if ia == ic:
            return [h[(ia + 1) % 6]]
        fwd = (ic - ia) % 6
        if fwd <= 3:
            return [h[(ia + k) % 6] for k in range(1, fwd)]
        return [h[(ia - k) % 6] for k in range(1, 6 - fwd)]

    def shrink(self, limit: int) -> None:
        """Contract the fresh walk toward the centroid of a lattice triangle.

        Squared distances to that centroid (scaled to integers) strictly
        drop for every fan or spur move at a farthest vertex, except inside
        the central triangle itself, where chords finish the job.
        """
        n = len(self.pts)
        q = (round(sum(p[0] for p in self.pts) / n), round(sum(p[1] for p in self.pts) / n))
        centre = (3 * q[0] + 1, 3 * q[1] + 1)

        def norm(p: Point) -> int:
            x, y = 3 * p[0] - centre[0], 3 * p[1] - centre[1]
            return x * x + x * y + y * y

        for _ in range(limit):
            L = len(self.walk)
            if L == 3:
                return
            order = sorted(range(L), key=lambda m: (-norm(self.pts[m]), m))
            chords = [m for m in order if self.can_chord(m)]
            if chords:
                self.chord(chords[0])
                continue
            m = order[0]
            P = self.pts[m]
            A, C = self.pts[(m - 1) % L], self.pts[(m + 1) % L]
            if A == C:
                # spur: slide the tip to a common neighbour nearer the centre,
                # preferring one that opens a chord on the next step
                far = {self.pts[(m - 2) % L], self.pts[(m + 2) % L]}
                common = [r for r in hexagon(P) if dist(r, A) == 1]
                z = min(common, key=lambda r: (norm(r), not any(dist(r, f) == 1 for f in far), r))
                self.fan(m, [z])
                continue
            blocked = self.b.has_edge(self.walk[(m - 1) % L], self.walk[(m + 1) % L])
            self.fan(m, self._inward(P, A, C, norm, blocked))
        raise PaperViolation("face filling did not converge", {"walk": list(self.walk)})

    @staticmethod
    def _inward(P: Point, A: Point, C: Point, norm, blocked: bool) -> list[Point]:
        """Hexagon path from A to C around P through the side nearer the centre."""
        h = hexagon(P)
        ia, ic = h.index(A), h.index(C)
        best = None
        for sgn in (1, -1):
            path = []
            k = ia
            while True:
                k = (k + sgn) % 6
                if k == ic:
                    break
                path.append(h[k])
            if blocked and not path:
                continue
            key = (max((norm(r) for r in path), default=-1), len(path))
            if best is None or key < best[0]:
                best = (key, path)
        return best[1]

    def fill(self) -> list[int]:
        if len(self.walk) <= 3:
            return []
        if self.apex():
            return self.added
        self.ring()
        self.shrink(limit=200 + 60 * len(self.walk))
        return self.added
