from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from conftest import random_coloring
from kempe_reconfig import generators as gen
from kempe_reconfig.coloring import (
    Coloring,
    KempeMove,
    apply_kempe,
    avoids,
    canonical_move,
    canonicalize,
    global_color_swap,
    is_proper,
    kempe_chain,
    replay,
    reverse_sequence,
    sequence_from_dict,
    sequence_to_dict,
    verify_sequence,
)
from kempe_reconfig.errors import InvalidColoringError, InvalidMoveError, SequenceError

TRI = gen.triangle()
C123 = Coloring((1, 2, 3), 5)


def test_is_proper_examples():
    assert is_proper(TRI, C123)
    assert not is_proper(gen.single_edge(), Coloring((1, 1), 2))
    assert is_proper(gen.octahedron(), Coloring(tuple(gen.octahedron_coloring()), 3))


def test_coloring_validation():
    with pytest.raises(InvalidColoringError):
        Coloring((0, 1), 2)
    with pytest.raises(InvalidColoringError):
        Coloring((1, 3), 2)
    assert Coloring.from_dict({"k": 3, "colors": [1, 2]}).to_dict() == {"k": 3, "colors": [1, 2]}


def test_kempe_chain_examples():
    p = gen.path(3)
    assert kempe_chain(p, Coloring((1, 2, 1), 2), 0, 2) == {0, 1, 2}
    assert kempe_chain(TRI, C123, 0, 2) == {0, 1}
    assert kempe_chain(TRI, C123, 0, 4) == {0}
    with pytest.raises(InvalidMoveError):
        kempe_chain(TRI, C123, 0, 1)


def test_apply_examples():
    assert apply_kempe(TRI, C123, KempeMove(0, 2)).colors == (2, 1, 3)
    star = gen.star(4)
    out = apply_kempe(star, Coloring((1, 2, 2, 2, 2), 2), KempeMove(0, 2))
    assert out.colors == (2, 1, 1, 1, 1)


def test_replay_examples():
    end, stats = replay(TRI, C123, [])
    assert end == C123 and stats.per_vertex == [0, 0, 0] and stats.length == 0
    end, stats = replay(TRI, C123, [KempeMove(2, 5)])
    assert stats.per_vertex == [0, 0, 1] and end.colors == (1, 2, 5)


def test_replay_errors():
    with pytest.raises(SequenceError) as e:
        replay(TRI, C123, [KempeMove(0, 2), KempeMove(0, 2)])
    assert e.value.index == 1
    with pytest.raises(SequenceError):
        replay(TRI, C123, [KempeMove(7, 2)])
    with pytest.raises(SequenceError):
        replay(TRI, C123, [KempeMove(0, 6)])


def test_verify_examples():
    assert verify_sequence(TRI, C123, [], C123).length == 0
    assert verify_sequence(TRI, C123, [KempeMove(0, 2)], Coloring((2, 1, 3), 5)).length == 1
    with pytest.raises(SequenceError):
        verify_sequence(TRI, C123, [], Coloring((2, 1, 3), 5))


def test_avoids_examples():
    assert all(avoids(TRI, [], C123, a) for a in range(1, 6))
    seq = [KempeMove(0, 2)]
    assert [avoids(TRI, seq, C123, a) for a in range(1, 6)] == [False, False, True, True, True]


def test_global_swap_examples():
    phi, moves = global_color_swap(TRI, C123, 1, 2)
    assert phi.colors == (2, 1, 3) and len(moves) == 1
    phi, moves = global_color_swap(TRI, C123, 4, 5)
    assert phi == C123 and moves == []
    g = gen.octahedron()
    octa = Coloring(tuple(gen.octahedron_coloring()), 3)
    phi, moves = global_color_swap(g, octa, 1, 2)
    assert phi.colors == tuple({1: 2, 2: 1}.get(c, c) for c in octa.colors)
    # classes 1 and 2 induce a 4-cycle: one chain
    assert len(moves) == 1


def test_sequence_json():
    seq = [KempeMove(0, 2), KempeMove(3, 1)]
    d = sequence_to_dict(seq)
    assert d == {"moves": [{"vertex": 0, "to_color": 2}, {"vertex": 3, "to_color": 1}]}
    assert sequence_from_dict(d) == seq
    with pytest.raises(SequenceError):
        sequence_from_dict({"moves": [{"v": 1}]})


def _instance(n: int, seed: int):
    rng = random.Random(seed)
    g = gen.random_plane_graph(n, seed=seed)
    return g, random_coloring(g, rng), rng


@given(st.integers(min_value=2, max_value=25), st.integers(min_value=0, max_value=10**6))
def test_involution_and_properness(n, seed):
    g, phi, rng = _instance(n, seed)
    for _ in range(10):
        v, b = rng.randrange(g.n), rng.randrange(1, 6)
        if b == phi[v]:
            continue
        psi = apply_kempe(g, phi, KempeMove(v, b))
        assert is_proper(g, psi)
        # flipping the same chain again, keyed by the old color, restores phi
        assert apply_kempe(g, psi, KempeMove(v, phi[v])) == phi


@given(st.integers(min_value=2, max_value=25), st.integers(min_value=0, max_value=10**6))
def test_chain_independent_of_representative(n, seed):
    g, phi, rng = _instance(n, seed)
    v, b = rng.randrange(g.n), rng.randrange(1, 6)
    if b == phi[v]:
        return
    ch = kempe_chain(g, phi, v, b)
    for u in ch:
        if phi[u] == b:
            assert kempe_chain(g, phi, u, phi[v]) == ch
    m = canonical_move(g, phi, KempeMove(v, b))
    assert m.vertex == min(ch) and apply_kempe(g, phi, m) == apply_kempe(g, phi, KempeMove(v, b))


@given(st.integers(min_value=2, max_value=25), st.integers(min_value=0, max_value=10**6))
def test_reverse_and_stats(n, seed):
    g, phi, rng = _instance(n, seed)
    seq, cols = [], list(phi.colors)
    for _ in range(15):
        v, b = rng.randrange(g.n), rng.randrange(1, 6)
        if b != cols[v]:
            seq.append(KempeMove(v, b))
            cols = list(apply_kempe(g, Coloring(tuple(cols), 5), seq[-1]).colors)
    end, stats = replay(g, phi, seq)
    assert replay(g, end, reverse_sequence(g, phi, seq))[0] == phi
    assert max(stats.per_vertex, default=0) <= stats.length == len(seq)
    assert replay(g, phi, canonicalize(g, phi, seq))[0] == end


@given(st.integers(min_value=2, max_value=25), st.integers(min_value=0, max_value=10**6),
       st.integers(1, 5), st.integers(1, 5))
def test_global_swap_transposes(n, seed, a, b):
    if a == b:
        return
    g, phi, _ = _instance(n, seed)
    psi, moves = global_color_swap(g, phi, a, b)
    assert psi.colors == tuple({a: b, b: a}.get(c, c) for c in phi.colors)
    _, stats = replay(g, phi, moves)
    assert stats.max_count <= 1
