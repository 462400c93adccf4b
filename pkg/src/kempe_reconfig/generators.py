"""Named plane graphs and seeded random generators for test corpora."""

from __future__ import annotations

import random

from .plane_graph import PlaneGraph, faces as trace_faces, validate


def single_vertex() -> PlaneGraph:
    return PlaneGraph(((),))


def single_edge() -> PlaneGraph:
    return PlaneGraph(((1,), (0,)))


def path(n: int) -> PlaneGraph:
    rot = []
    for v in range(n):
        rot.append(tuple(u for u in (v - 1, v + 1) if 0 <= u < n))
    return PlaneGraph(tuple(rot))


def star(leaves: int) -> PlaneGraph:
    rot = [tuple(range(1, leaves + 1))] + [(0,)] * leaves
    return PlaneGraph(tuple(rot))


def cycle(n: int) -> PlaneGraph:
    return PlaneGraph.from_faces(n, [tuple(range(n)), tuple(reversed(range(n)))])


def triangle() -> PlaneGraph:
    return cycle(3)


def wheel(k: int) -> PlaneGraph:
    """Hub 0 with rim 1..k."""
    rim = [1 + i for i in range(k)]
    faces = [(0, rim[i], rim[(i + 1) % k]) for i in range(k)]
    faces.append(tuple(reversed(rim)))
    return PlaneGraph.from_faces(k + 1, faces)


def bipyramid(k: int) -> PlaneGraph:
    """Apexes 0 and k+1 over the rim 1..k; k=4 is the octahedron."""
    rim = [1 + i for i in range(k)]
    bottom = k + 1
    faces = [(0, rim[i], rim[(i + 1) % k]) for i in range(k)]
    faces += [(bottom, rim[(i + 1) % k], rim[i]) for i in range(k)]
    return PlaneGraph.from_faces(k + 2, faces)


def k4() -> PlaneGraph:
    return PlaneGraph.from_faces(4, [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])


def octahedron() -> PlaneGraph:
    return bipyramid(4)


def icosahedron() -> PlaneGraph:
    up = [1 + i for i in range(5)]
    lo = [6 + i for i in range(5)]
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces.append((0, up[i], up[j]))
        faces.append((up[i], lo[i], up[j]))
        faces.append((up[j], lo[i], lo[j]))
        faces.append((11, lo[j], lo[i]))
    return PlaneGraph.from_faces(12, faces)


def octahedron_coloring() -> list[int]:
    """The 3-coloring of :func:`octahedron` with opposite vertices alike."""
    return [1, 2, 3, 2, 3, 1]


# ---------------------------------------------------------------------------
# random triangulations


def _flip_edges(faces: list[tuple[int, int, int]], rng: random.Random, n: int, flips: int) -> None:
    """Attempt ``flips`` random edge flips, keeping the graph simple and degrees >= 3."""
    where: dict[tuple[int, int], int] = {}
    for i, (a, b, c) in enumerate(faces):
        where[(a, b)] = i
        where[(b, c)] = i
        where[(c, a)] = i
    deg = [0] * n
    for a, _ in where:
        deg[a] += 1
    edges = sorted((a, b) for a, b in where if a < b)
    for _ in range(flips):
        k = rng.randrange(len(edges))
        a, b = edges[k]
        i, j = where[(a, b)], where[(b, a)]
        c = next(x for x in faces[i] if x not in (a, b))
        d = next(x for x in faces[j] if x not in (a, b))
        if c == d or (c, d) in where or deg[a] <= 3 or deg[b] <= 3:
            continue
        for x, y in ((a, b), (b, a)):
            del where[(x, y)]
        faces[i] = (c, a, d)
        faces[j] = (d, b, c)
        for f in (i, j):
            x, y, z = faces[f]
            where[(x, y)] = where[(y, z)] = where[(z, x)] = f
        deg[a] -= 1
        deg[b] -= 1
        deg[c] += 1
        deg[d] += 1
        edges[k] = (min(c, d), max(c, d))


def random_triangulation(n: int, seed: int = 0, flips: int | None = None) -> PlaneGraph:
    """Random plane triangulation by repeated face splitting, then edge flips.

    ``flips`` defaults to ``n`` for n > 4; pass 0 for pure stacked
    triangulations.  n = 4 always yields K4.
    """
    if n < 3:
        raise ValueError("a triangulation needs at least 3 vertices")
    rng = random.Random(seed)
    faces = [(0, 1, 2), (0, 2, 1)]
    for v in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        faces[i] = (a, b, v)
        faces.append((b, c, v))
        faces.append((c, a, v))
    if flips is None:
        flips = n if n > 4 else 0
    _flip_edges(faces, rng, n, flips)
    g = PlaneGraph.from_faces(n, faces)
    validate(g)
    return g


def _octa_faces() -> list[tuple[int, ...]]:
    return [f.vertices for f in trace_faces(octahedron())]


def eulerian_triangulation(n: int, seed: int = 0) -> PlaneGraph:
    """Random even-degree triangulation on n vertices (n = 6 or n >= 8).

    Grows the octahedron with two degree-preserving moves: a quadrilateral
    refill adding two vertices, and an octahedral face insertion adding three.
    """
    if n == 7 or n < 6:
        raise ValueError("Eulerian triangulations exist only for n = 6 and n >= 8")
    rng = random.Random(seed)
    faces = [tuple(f) for f in _octa_faces()]
    size = 6
    while size < n:
        left = n - size
        step = 3 if left == 3 or (left >= 5 and rng.random() < 0.5) else 2
        if step == 2:
            where = {}
            for i, (a, b, c) in enumerate(faces):
                where[(a, b)] = i
                where[(b, c)] = i
                where[(c, a)] = i
            a, b = sorted(k for k in where if k[0] < k[1])[rng.randrange(len(where) // 2)]
            i, j = where[(a, b)], where[(b, a)]
            c = next(x for x in faces[i] if x not in (a, b))
            d = next(x for x in faces[j] if x not in (a, b))
            p, q = size, size + 1
            faces[i] = (c, a, p)
            faces[j] = (a, d, p)
            faces += [(d, b, q), (b, c, q), (p, d, q), (q, c, p)]
        else:
            i = rng.randrange(len(faces))
            x, y, z = faces[i]
            p, q, r = size, size + 1, size + 2
            faces[i] = (x, y, r)
            faces += [(y, z, p), (z, x, q), (x, r, q), (y, p, r), (z, q, p), (r, p, q)]
        size += step
    g = PlaneGraph.from_faces(n, faces)
    validate(g)
    return g


def random_plane_graph(n: int, seed: int = 0, keep: float | None = None) -> PlaneGraph:
    """Connected plane graph: a random triangulation with edges thinned out.

    Each deletion keeps the graph connected; ``keep`` is the fraction of the
    triangulation's edges to retain (random when omitted).
    """
    rng = random.Random(seed)
    if n == 1:
        return single_vertex()
    if n == 2:
        return single_edge()
    g = random_triangulation(n, seed=rng.randrange(1 << 30))
    if keep is None:
        keep = rng.uniform(0.3, 1.0)
    target = max(n - 1, round(keep * g.num_edges))
    rot = [list(r) for r in g.rotations]
    edges = list(g.edges)
    rng.shuffle(edges)
    count = len(edges)
    for u, v in edges:
        if count <= target:
            break
        trial = list(rot)
        trial[u] = [x for x in rot[u] if x != v]
        trial[v] = [x for x in rot[v] if x != u]
        if _connected(trial):
            rot = trial
            count -= 1
    out = PlaneGraph(tuple(tuple(r) for r in rot))
    validate(out)
    return out


def _connected(rot: list[list[int]]) -> bool:
    n = len(rot)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in rot[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def canonical_key(g: PlaneGraph) -> tuple:
    return g.rotations


def small_corpus(max_n: int = 7, size: int = 500, seed: int = 0) -> list[PlaneGraph]:
    """Distinct connected plane graphs (as embeddings) with 1 <= n <= max_n."""
    rng = random.Random(seed)
    out: list[PlaneGraph] = []
    seen: set[tuple] = set()

    def add(g: PlaneGraph) -> None:
        key = canonical_key(g)
        if key not in seen:
            seen.add(key)
            out.append(g)

    for g in (single_vertex(), single_edge(), path(3), triangle(), star(3), cycle(4), k4(),
              wheel(4), cycle(5), wheel(5), octahedron(), wheel(6), bipyramid(5), cycle(7)):
        if g.n <= max_n:
            add(g)
    attempts = 0
    while len(out) < size and attempts < size * 50:
        attempts += 1
        n = rng.randint(3, max_n)
        add(random_plane_graph(n, seed=rng.randrange(1 << 30)))
    return out
