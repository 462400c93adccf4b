"""Colorings, Kempe chains and K-changes, sequence replay and accounting.

A move ``KempeMove(v, c)`` swaps the colors ``phi(v)`` and ``c`` on the Kempe
chain through ``v``.  Chains are recomputed when the move is applied, so a
sequence is only meaningful together with its starting coloring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import InvalidColoringError, InvalidMoveError, SequenceError
from .plane_graph import PlaneGraph


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        for c in self.colors:
            if not 1 <= c <= self.k:
                raise InvalidColoringError(f"color {c} outside 1..{self.k}")

    @classmethod
    def of(cls, colors: Iterable[int], k: int | None = None) -> "Coloring":
        cs = tuple(int(c) for c in colors)
        return cls(cs, k if k is not None else max(cs, default=1))

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def used(self) -> set[int]:
        return set(self.colors)

    def with_k(self, k: int) -> "Coloring":
        return Coloring(self.colors, k)

    def to_dict(self) -> dict:
        return {"k": self.k, "colors": list(self.colors)}

    @classmethod
    def from_dict(cls, data: dict) -> "Coloring":
        try:
            return cls(tuple(int(c) for c in data["colors"]), int(data["k"]))
        except (KeyError, TypeError) as exc:
            raise InvalidColoringError(f"malformed coloring record: {exc}") from exc


class KempeMove(NamedTuple):
    vertex: int
    to_color: int


@dataclass
class RecolorStats:
    per_vertex: list[int]
    length: int = 0

    @property
    def max_count(self) -> int:
        return max(self.per_vertex, default=0)

    def merged(self, other: "RecolorStats") -> "RecolorStats":
        return RecolorStats([a + b for a, b in zip(self.per_vertex, other.per_vertex)],
                            self.length + other.length)

    def to_dict(self) -> dict:
        return {"length": self.length, "max_recolors": self.max_count, "per_vertex": self.per_vertex}


# ---------------------------------------------------------------------------
# list-level primitives; the algorithms use these on mutable color lists


def chain_of(adj: Sequence[Iterable[int]], colors: Sequence[int], v: int, b: int) -> list[int]:
    a = colors[v]
    if a == b:
        raise InvalidMoveError(f"vertex {v} already has color {b}")
    seen = {v}
    out = [v]
    stack = [v]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen and (colors[y] == a or colors[y] == b):
                seen.add(y)
                out.append(y)
                stack.append(y)
    return out


def flip(adj: Sequence[Iterable[int]], colors: list[int], v: int, b: int) -> list[int]:
    """Apply the move ``(v, b)`` in place and return the recolored chain."""
    a = colors[v]
    ch = chain_of(adj, colors, v, b)
    for x in ch:
        colors[x] = b if colors[x] == a else a
    return ch


def proper(adj: Sequence[Iterable[int]], colors: Sequence[int]) -> bool:
    return all(colors[u] != colors[v] for u in range(len(adj)) for v in adj[u])


# ---------------------------------------------------------------------------
# public API over immutable values


def _check(g: PlaneGraph, phi: Coloring) -> None:
    if len(phi) != g.n:
        raise InvalidColoringError(f"coloring has {len(phi)} entries for {g.n} vertices")


def is_proper(g: PlaneGraph, phi: Coloring) -> bool:
    _check(g, phi)
    return proper(g.adj, phi.colors)


def kempe_chain(g: PlaneGraph, phi: Coloring, v: int, b: int) -> frozenset[int]:
    _check(g, phi)
    return frozenset(chain_of(g.adj, phi.colors, v, b))


def apply_kempe(g: PlaneGraph, phi: Coloring, move: KempeMove) -> Coloring:
    _check(g, phi)
    v, b = move
    if not 1 <= b <= phi.k:
        raise InvalidMoveError(f"target color {b} outside 1..{phi.k}")
    colors = list(phi.colors)
    flip(g.adj, colors, v, b)
    return Coloring(tuple(colors), phi.k)


def replay(g: PlaneGraph, phi0: Coloring, seq: Iterable[KempeMove]) -> tuple[Coloring, RecolorStats]:
    """Fold the moves over ``phi0``; fails fast with the offending index."""
    _check(g, phi0)
    if not proper(g.adj, phi0.colors):
        raise SequenceError("starting coloring is not proper", index=None)
    colors = list(phi0.colors)
    stats = RecolorStats([0] * g.n)
    for i, (v, b) in enumerate(seq):
        if not 0 <= v < g.n:
            raise SequenceError(f"move {i}: vertex {v} out of range", index=i)
        if not 1 <= b <= phi0.k:
            raise SequenceError(f"move {i}: color {b} outside 1..{phi0.k}", index=i)
        if colors[v] == b:
            raise SequenceError(f"move {i}: vertex {v} already has color {b}", index=i)
        for x in flip(g.adj, colors, v, b):
            stats.per_vertex[x] += 1
        stats.length += 1
    # flips of Kempe chains cannot create a monochromatic edge
    assert proper(g.adj, colors), "K-change produced an improper coloring"
    return Coloring(tuple(colors), phi0.k), stats


def verify_sequence(
    g: PlaneGraph, phi0: Coloring, seq: Iterable[KempeMove], target: Coloring
) -> RecolorStats:
    end, stats = replay(g, phi0, seq)
    if end.colors != target.colors:
        diff = next(v for v in range(g.n) if end.colors[v] != target.colors[v])
        raise SequenceError(
            f"sequence ends at a different coloring (first mismatch at vertex {diff})",
            index=stats.length,
        )
    return stats


def avoids(g: PlaneGraph, seq: Iterable[KempeMove], phi0: Coloring, a: int) -> bool:
    """True iff no vertex acquires color ``a`` while replaying ``seq``."""
    colors = list(phi0.colors)
    for v, b in seq:
        for x in flip(g.adj, colors, v, b):
            if colors[x] == a:
                return False
    return True


def global_color_swap(g: PlaneGraph, phi: Coloring, a: int, b: int) -> tuple[Coloring, list[KempeMove]]:
    """Exchange colors ``a`` and ``b`` everywhere by flipping every {a, b}-chain once."""
    if a == b:
        raise InvalidMoveError("global swap needs two distinct colors")
    colors = list(phi.colors)
    moves = swap_moves(g.adj, colors, a, b)
    return Coloring(tuple(colors), max(phi.k, a, b)), moves


def swap_moves(adj, colors: list[int], a: int, b: int) -> list[KempeMove]:
    """In-place global swap of ``a`` and ``b``; returns the moves used."""
    done: set[int] = set()
    moves = []
    for v in range(len(colors)):
        if v in done or colors[v] not in (a, b):
            continue
        other = b if colors[v] == a else a
        ch = flip(adj, colors, v, other)
        done.update(ch)
        moves.append(KempeMove(v, other))
    return moves


def reverse_sequence(g: PlaneGraph, phi0: Coloring, seq: Sequence[KempeMove]) -> list[KempeMove]:
    """Moves undoing ``seq``: replay from ``phi0`` and invert in reverse order."""
    colors = list(phi0.colors)
    inverse = []
    for v, b in seq:
        inverse.append(KempeMove(v, colors[v]))
        flip(g.adj, colors, v, b)
    inverse.reverse()
    return inverse


def canonical_move(g: PlaneGraph, phi: Coloring, move: KempeMove) -> KempeMove:
    """Same K-change, represented at the lowest-id vertex of its chain."""
    v, b = move
    a = phi.colors[v]
    ch = chain_of(g.adj, phi.colors, v, b)
    u = min(ch)
    return KempeMove(u, b if phi.colors[u] == a else a)


def canonicalize(g: PlaneGraph, phi0: Coloring, seq: Iterable[KempeMove]) -> list[KempeMove]:
    colors = list(phi0.colors)
    out = []
    for v, b in seq:
        a = colors[v]
        ch = flip(g.adj, colors, v, b)
        u = min(ch)
        # colors[u] now holds where u went, which is the move's target at u
        out.append(KempeMove(u, colors[u]))
        assert colors[v] == b and a != b
    return out


# ---------------------------------------------------------------------------
# JSON


def sequence_to_dict(seq: Iterable[KempeMove]) -> dict:
    return {"moves": [{"vertex": v, "to_color": c} for v, c in seq]}


def sequence_from_dict(data: dict) -> list[KempeMove]:
    try:
        return [KempeMove(int(m["vertex"]), int(m["to_color"])) for m in data["moves"]]
    except (KeyError, TypeError) as exc:
        raise SequenceError(f"malformed sequence record: {exc}") from exc


def dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(", ", ": "))


__all__ = [
    "Coloring",
    "KempeMove",
    "RecolorStats",
    "apply_kempe",
    "avoids",
    "canonical_move",
    "canonicalize",
    "chain_of",
    "flip",
    "global_color_swap",
    "is_proper",
    "kempe_chain",
    "replay",
    "reverse_sequence",
    "sequence_from_dict",
    "sequence_to_dict",
    "verify_sequence",
]
