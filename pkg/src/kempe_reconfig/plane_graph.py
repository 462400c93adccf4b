"""Plane graphs stored as rotation systems.

A plane graph is a simple graph together with, for every vertex, the cyclic
order of its neighbours.  Faces are traced on darts ``(u, v)`` with the rule

    next(u -> v) = (v -> succ_v(u))

where ``succ_v(u)`` is the neighbour following ``u`` in the rotation of ``v``.
Planarity is certified by Euler's formula on every connected component; no
planarity testing of abstract graphs is attempted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    AsymmetricRotationError,
    EulerViolationError,
    InvalidGraphError,
    ParallelEdgeError,
    SelfLoopError,
    SurgeryError,
)

Dart = tuple[int, int]
VertexMap = list  # old id -> new id, or None for deleted vertices


@dataclass(frozen=True)
class PlaneGraph:
    rotations: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rotations(cls, rotations: Iterable[Iterable[int]]) -> "PlaneGraph":
        return cls(tuple(tuple(int(x) for x in r) for r in rotations))

    @classmethod
    def from_faces(cls, n: int, faces: Iterable[Sequence[int]]) -> "PlaneGraph":
        """Build the rotation system whose traced faces are ``faces``.

        Every face is a closed walk listed in tracing order; each dart must
        occur in exactly one face.
        """
        succ: list[dict[int, int]] = [{} for _ in range(n)]
        for face in faces:
            k = len(face)
            for t in range(k):
                prev, cur, nxt = face[t - 1], face[t], face[(t + 1) % k]
                if prev in succ[cur]:
                    raise InvalidGraphError(f"dart ({prev}, {cur}) used by two faces")
                succ[cur][prev] = nxt
        rotations = []
        for v in range(n):
            s = succ[v]
            if not s:
                rotations.append(())
                continue
            start = min(s)
            order = [start]
            x = s[start]
            while x != start:
                order.append(x)
                x = s[x]
            if len(order) != len(s):
                raise InvalidGraphError(f"faces around vertex {v} do not close up into one rotation")
            rotations.append(tuple(order))
        return cls(tuple(rotations))

    # basic queries ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.rotations)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rotations)

    @cached_property
    def _pos(self) -> tuple[dict[int, int], ...]:
        return tuple({u: i for i, u in enumerate(r)} for r in self.rotations)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order; the index is the edge id."""
        return tuple(sorted((u, v) for u in range(self.n) for v in self.rotations[u] if u < v))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def succ(self, v: int, u: int) -> int:
        """Neighbour of ``v`` following ``u`` in the rotation at ``v``."""
        r = self.rotations[v]
        return r[(self._pos[v][u] + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        r = self.rotations[v]
        return r[(self._pos[v][u] - 1) % len(r)]

    def next_dart(self, u: int, v: int) -> Dart:
        return (v, self.succ(v, u))

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], [s]
            while stack:
                x = stack.pop()
                for y in self.rotations[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
                        comp.append(y)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def induced(self, vertices: Iterable[int]) -> tuple["PlaneGraph", list[int]]:
        """Subgraph induced on ``vertices`` with inherited rotations.

        Returns the subgraph and the list ``keep`` with ``keep[new] = old``.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        rot = [tuple(index[u] for u in self.rotations[v] if u in index) for v in keep]
        return PlaneGraph(tuple(rot)), keep

    # serialisation ---------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "rotations": [list(r) for r in self.rotations]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "PlaneGraph":
        try:
            n = int(data["n"])
            rotations = data["rotations"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidGraphError(f"malformed graph record: {exc}") from exc
        if len(rotations) != n:
            raise InvalidGraphError(f"n={n} but {len(rotations)} rotation lists given")
        g = cls.from_rotations(rotations)
        validate(g)
        return g

    @classmethod
    def from_json(cls, text: str) -> "PlaneGraph":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Face:
    darts: tuple[Dart, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        """Vertices in tracing order; a vertex repeats if the walk revisits it."""
        return tuple(u for u, _ in self.darts)

    def is_simple_cycle(self) -> bool:
        vs = self.vertices
        return len(vs) >= 3 and len(set(vs)) == len(vs)


@dataclass(frozen=True)
class ValidationReport:
    vertices: int
    edges: int
    faces: int
    components: int


def _check_structure(g: PlaneGraph) -> None:
    n = g.n
    for v, rot in enumerate(g.rotations):
        if len(set(rot)) != len(rot):
            raise ParallelEdgeError(f"vertex {v} lists a neighbour twice: {rot}")
        for u in rot:
            if not 0 <= u < n:
                raise InvalidGraphError(f"vertex {v} has out-of-range neighbour {u}")
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {v}")
    for v, rot in enumerate(g.rotations):
        for u in rot:
            if v not in g.rotations[u]:
                raise AsymmetricRotationError(f"{u} is in rotation of {v} but not vice versa")


def _trace(g: PlaneGraph) -> list[Face]:
    seen: set[Dart] = set()
    out = []
    for u in range(g.n):
        for v in sorted(g.rotations[u]):
            if (u, v) in seen:
                continue
            darts = []
            d = (u, v)
            while d not in seen:
                seen.add(d)
                darts.append(d)
                d = g.next_dart(*d)
            out.append(Face(tuple(darts)))
    return out


def validate(g: PlaneGraph) -> ValidationReport:
    """Check symmetry, simplicity and genus 0; raise on the first violation."""
    _check_structure(g)
    fs = _trace(g)
    comp_of = [0] * g.n
    for i, comp in enumerate(g.components):
        for v in comp:
            comp_of[v] = i
    face_count = [0] * len(g.components)
    for f in fs:
        face_count[comp_of[f.darts[0][0]]] += 1
    total_faces = 0
    for i, comp in enumerate(g.components):
        v_c = len(comp)
        e_c = sum(g.degree(v) for v in comp) // 2
        f_c = face_count[i] if e_c else 1
        if v_c - e_c + f_c != 2:
            raise EulerViolationError(
                f"component containing {comp[0]}: V-E+F = {v_c}-{e_c}+{f_c} != 2"
            )
        total_faces += f_c
    c = len(g.components)
    if c:
        total_faces -= c - 1
    return ValidationReport(g.n, g.num_edges, total_faces, c)


def faces(g: PlaneGraph) -> list[Face]:
    """All faces traced from darts, in order of their lowest starting dart."""
    return _trace(g)


def is_triangulation(g: PlaneGraph) -> bool:
    if g.n < 3 or not g.is_connected():
        return False
    return all(f.length == 3 for f in faces(g))


def low_degree_vertices(g: PlaneGraph, bound: int = 6) -> list[int]:
    return [v for v in range(g.n) if g.degree(v) <= bound]


# ---------------------------------------------------------------------------
# surgery


class RotationBuilder:
    """Mutable rotation lists used while performing surgery."""

    def __init__(self, g: PlaneGraph | None = None) -> None:
        self.rot: list[list[int]] = [list(r) for r in g.rotations] if g else []

    @property
    def n(self) -> int:
        return len(self.rot)

    def add_vertex(self) -> int:
        self.rot.append([])
        return len(self.rot) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.rot[u]

    def succ(self, v: int, u: int) -> int:
        r = self.rot[v]
        return r[(r.index(u) + 1) % len(r)]

    def insert_after(self, v: int, after: int | None, new: int) -> None:
        """Insert ``new`` into the rotation of ``v`` right after ``after``."""
        r = self.rot[v]
        if after is None or not r:
            r.append(new)
        else:
            r.insert(r.index(after) + 1, new)

    def face_walk(self, u: int, v: int) -> list[int]:
        """Vertices of the face containing dart ``(u, v)``, starting at ``u``."""
        walk = []
        d = (u, v)
        start = d
        while True:
            walk.append(d[0])
            d = (d[1], self.succ(d[1], d[0]))
            if d == start:
                return walk

    def freeze(self) -> PlaneGraph:
        return PlaneGraph(tuple(tuple(r) for r in self.rot))


def _compact(rot: list[list[int]], dead: set[int]) -> tuple[PlaneGraph, VertexMap]:
    vmap: VertexMap = []
    nxt = 0
    for v in range(len(rot)):
        if v in dead:
            vmap.append(None)
        else:
            vmap.append(nxt)
            nxt += 1
    new_rot = [tuple(vmap[u] for u in rot[v]) for v in range(len(rot)) if v not in dead]
    return PlaneGraph(tuple(new_rot)), vmap


def delete_vertex(g: PlaneGraph, v: int) -> tuple[PlaneGraph, VertexMap]:
    """Remove ``v``; neighbours keep the rest of their rotation in place."""
    rot = [[u for u in r if u != v] for r in g.rotations]
    rot[v] = []
    return _compact(rot, {v})


def delete_vertices(g: PlaneGraph, vs: Iterable[int]) -> tuple[PlaneGraph, VertexMap]:
    dead = set(vs)
    rot = [[u for u in r if u not in dead] for r in g.rotations]
    return _compact(rot, dead)


def _face_corner(walk_darts: Sequence[Dart], x: int) -> int | None:
    """Predecessor of ``x`` at the first corner of ``x`` on a face walk."""
    for a, b in walk_darts:
        if b == x:
            return a
    return None


def _identify_raw(
    b: RotationBuilder, u: int, w: int, corner_u: int | None, corner_w: int | None
) -> None:
    """Identify ``w`` into ``u`` through a chord drawn in a common face.

    ``corner_u`` is the neighbour preceding the face corner at ``u`` (``None``
    when ``u`` is isolated); likewise for ``w``.  The chord ``u w`` is added in
    that face and then contracted.  ``w`` is left isolated; parallel edges are
    merged keeping the copy that came from ``u``.
    """
    if b.has_edge(u, w):
        raise SurgeryError(f"cannot identify adjacent vertices {u} and {w}")
    b.insert_after(u, corner_u, w)
    b.insert_after(w, corner_w, u)
    ru, rw = b.rot[u], b.rot[w]
    iu, iw = ru.index(w), rw.index(u)
    part_u = [(x, u) for x in ru[iu + 1:] + ru[:iu]]
    part_w = [(x, w) for x in rw[iw + 1:] + rw[:iw]]
    from_u = {x for x, _ in part_u}
    merged = []
    for x, origin in part_u + part_w:
        if origin == w and x in from_u:
            b.rot[x].remove(w)
            continue
        merged.append(x)
    for x in merged:
        rx = b.rot[x]
        for i, y in enumerate(rx):
            if y == w:
                rx[i] = u
    b.rot[u] = merged
    b.rot[w] = []


def _shared_face_corners(
    g: PlaneGraph, u: int, w: int, prefer: frozenset[int] = frozenset()
) -> tuple[int | None, int | None]:
    """Pick a face holding both ``u`` and ``w`` and return their corners.

    Among candidate faces, the one containing the most vertices of ``prefer``
    wins; ties go to the lowest face index.  Vertices in different components
    may use any corners.
    """
    comp = {x: i for i, c in enumerate(g.components) for x in c}
    if comp[u] != comp[w]:
        cu = g.pred(u, g.rotations[u][0]) if g.degree(u) else None
        cw = g.pred(w, g.rotations[w][0]) if g.degree(w) else None
        return cu, cw
    best = None
    for f in faces(g):
        vs = set(f.vertices)
        if u in vs and w in vs:
            score = len(vs & prefer)
            if best is None or score > best[0]:
                best = (score, f)
    if best is None:
        raise SurgeryError(f"vertices {u} and {w} share no face; identification is not planar")
    f = best[1]
    return _face_corner(f.darts, u), _face_corner(f.darts, w)


def identify_in_face(
    g: PlaneGraph, u: int, w: int, prefer: Iterable[int] = ()
) -> tuple[PlaneGraph, VertexMap]:
    """Identify two non-adjacent vertices lying on a common face.

    The merged vertex takes id ``min(u, w)``; ids above ``max(u, w)`` shift
    down by one.
    """
    if u == w:
        raise SurgeryError("identifying a vertex with itself")
    if g.has_edge(u, w):
        raise SurgeryError(f"vertices {u} and {w} are adjacent")
    u, w = min(u, w), max(u, w)
    cu, cw = _shared_face_corners(g, u, w, frozenset(prefer))
    b = RotationBuilder(g)
    _identify_raw(b, u, w, cu, cw)
    h, vmap = _compact(b.rot, {w})
    vmap[w] = vmap[u]
    return h, vmap


def identify_neighbors(g: PlaneGraph, v: int, u: int, w: int) -> tuple[PlaneGraph, VertexMap]:
    """Identify two neighbours ``u``, ``w`` of ``v`` and keep ``v`` embedded.

    The identification is routed through the region around ``v``; ``v`` is
    then re-attached inside a face containing all images of its neighbours.
    Raises :class:`SurgeryError` when no such face exists, which happens
    whenever the identified graph with ``v`` kept is not planar.
    """
    if u not in g.adj[v] or w not in g.adj[v] or u == w:
        raise SurgeryError("u and w must be distinct neighbours of v")
    if g.has_edge(u, w):
        raise SurgeryError(f"neighbours {u} and {w} of {v} are adjacent")
    h, dmap = delete_vertex(g, v)
    nbrs = frozenset(dmap[x] for x in g.rotations[v])
    h2, imap = identify_in_face(h, dmap[u], dmap[w], prefer=nbrs)
    images = []
    for x in g.rotations[v]:
        y = imap[dmap[x]]
        if y not in images:
            images.append(y)
    h3, new_v = _reinsert(h2, images)
    # put v back at its original id
    order = list(range(h3.n))
    order.remove(new_v)
    order.insert(v, new_v)
    pos = {old: i for i, old in enumerate(order)}
    rot = [tuple(pos[x] for x in h3.rotations[old]) for old in order]
    out = PlaneGraph(tuple(rot))
    vmap: VertexMap = []
    for x in range(g.n):
        if x == v:
            vmap.append(v)
        else:
            vmap.append(pos[imap[dmap[x]]])
    return out, vmap


def _reinsert(h: PlaneGraph, nbrs: Sequence[int]) -> tuple[PlaneGraph, int]:
    """Add a vertex adjacent to ``nbrs`` inside some face, if one fits."""
    target = set(nbrs)
    candidates = faces(h) if h.num_edges else []
    for f in candidates:
        walk = f.vertices
        if not target <= set(walk):
            continue
        seen: list[int] = []
        corners: list[tuple[int, int]] = []
        for a, x in zip((d[0] for d in f.darts[-1:] + f.darts[:-1]), walk):
            if x in target and x not in seen:
                seen.append(x)
                corners.append((x, a))
        b = RotationBuilder(h)
        z = b.add_vertex()
        for x, a in corners:
            b.insert_after(x, a, z)
        b.rot[z] = [x for x, _ in reversed(corners)]
        out = b.freeze()
        try:
            validate(out)
        except InvalidGraphError:
            continue
        return out, z
    if len(h.components) > 1 or h.num_edges == 0:
        # neighbours scattered over components with no shared face: attach
        # to each component through an arbitrary outer corner
        b = RotationBuilder(h)
        z = b.add_vertex()
        for x in nbrs:
            r = b.rot[x]
            b.insert_after(x, r[-1] if r else None, z)
        b.rot[z] = list(reversed(list(nbrs)))
        out = b.freeze()
        try:
            validate(out)
            return out, z
        except InvalidGraphError:
            pass
    raise SurgeryError("identification leaves no face holding every neighbour; result is not planar")


@dataclass(frozen=True)
class Gadget:
    """A near-triangulation to be glued into a face.

    ``boundary[t]`` is the gadget vertex glued onto the ``t``-th vertex of the
    target face walk.  Darts ``boundary[t] -> boundary[t+1]`` lie on interior
    (triangular) faces of the gadget, so its outer face runs the other way.
    """

    graph: PlaneGraph
    boundary: tuple[int, ...]
    size_constant: int = 1


def fan_gadget(length: int) -> Gadget:
    """One apex joined to every vertex of a ``length``-cycle."""
    apex = length
    tri = [(t, (t + 1) % length, apex) for t in range(length)]
    outer = [tuple(reversed(range(length)))]
    g = PlaneGraph.from_faces(length + 1, tri + outer)
    return Gadget(g, tuple(range(length)), size_constant=1)


def insert_in_face(g: PlaneGraph, f: Face, gadget: Gadget | None) -> PlaneGraph:
    """Glue ``gadget`` inside face ``f``; new vertices get ids from ``g.n`` on."""
    if gadget is None or gadget.graph.n == len(gadget.boundary):
        if gadget is not None and gadget.graph.num_edges != len(gadget.boundary):
            raise SurgeryError("gadget without interior vertices must not add chords")
        return g
    walk = f.vertices
    if len(gadget.boundary) != len(walk):
        raise SurgeryError("gadget boundary length differs from the face length")
    if len(set(walk)) != len(walk):
        raise SurgeryError("gadgets can only be glued into faces bounded by a simple cycle")
    H = gadget.graph
    bset = set(gadget.boundary)
    L = len(walk)
    for t in range(L):
        if not H.has_edge(gadget.boundary[t], gadget.boundary[(t + 1) % L]):
            raise SurgeryError("gadget boundary is not a cycle in the face order")
        # darts along the boundary must sit on interior triangles
        if H.succ(gadget.boundary[(t + 1) % L], gadget.boundary[t]) in bset:
            raise SurgeryError("attachment order violates the cyclic order of the face")
    for a in gadget.boundary:
        for c in H.rotations[a]:
            if c in bset and c not in (
                gadget.boundary[(gadget.boundary.index(a) + 1) % L],
                gadget.boundary[(gadget.boundary.index(a) - 1) % L],
            ):
                raise SurgeryError("gadget chords between boundary vertices are not allowed")
    glue = {gadget.boundary[t]: walk[t] for t in range(L)}
    nxt = g.n
    for x in range(H.n):
        if x not in glue:
            glue[x] = nxt
            nxt += 1
    b = RotationBuilder(g)
    for _ in range(nxt - g.n):
        b.add_vertex()
    for x in range(H.n):
        if x in bset:
            continue
        b.rot[glue[x]] = [glue[y] for y in H.rotations[x]]
    for t in range(L):
        a = gadget.boundary[t]
        prev_g = walk[t - 1]
        prev_h = gadget.boundary[t - 1]
        r = H.rotations[a]
        i = r.index(prev_h)
        inner = []
        for k in range(1, len(r)):
            y = r[(i + k) % len(r)]
            if y in bset:
                break
            inner.append(glue[y])
        anchor = prev_g
        for y in inner:
            b.insert_after(walk[t], anchor, y)
            anchor = y
    out = b.freeze()
    validate(out)
    return out
