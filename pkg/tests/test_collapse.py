from __future__ import annotations

import itertools
import json
import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import check_lift_instance, random_coloring
from kempe_reconfig import generators as gen
from kempe_reconfig.collapse import (
    Pairs,
    Triple,
    collapse,
    good_stack,
    good_witness,
    is_good,
    lift_sequence,
    make_all_good,
    make_good,
)
from kempe_reconfig.coloring import Coloring, KempeMove, avoids, is_proper, replay
from kempe_reconfig.errors import PaperViolation
from kempe_reconfig.oracle import neighbor_moves
from kempe_reconfig.plane_graph import PlaneGraph, validate


def _star_coloring(rim: tuple[int, ...], hub: int = 5) -> tuple[PlaneGraph, Coloring]:
    return gen.star(len(rim)), Coloring.of((hub,) + rim, 5)


def _crossing(p, q) -> bool:
    # chords p, q of a hexagon (positions) cross iff their endpoints alternate
    marks = sorted([(x, 0) for x in p] + [(x, 1) for x in q])
    tags = [t for _, t in marks]
    return tags in ([0, 1, 0, 1], [1, 0, 1, 0])


def _brute_good(rim) -> bool:
    pos = range(len(rim))
    if any(rim[a] == rim[b] == rim[c] for a, b, c in itertools.combinations(pos, 3)):
        return True
    pairs = [p for p in itertools.combinations(pos, 2) if rim[p[0]] == rim[p[1]]]
    return any(not set(p) & set(q) and not _crossing(p, q) for p, q in itertools.combinations(pairs, 2))


def _nx(g: PlaneGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


# -- goodness -------------------------------------------------------------------


def test_triple_witness():
    g, phi = _star_coloring((1, 1, 1, 2, 3, 4))
    assert good_witness(g, phi, 0) == Triple(1, 2, 3)


def test_only_crossing_pairs_give_no_witness():
    g, phi = _star_coloring((1, 2, 1, 3, 2, 4))
    assert not _brute_good((1, 2, 1, 3, 2, 4))
    assert good_witness(g, phi, 0) is None


def test_alternating_pattern_has_no_witness():
    g, phi = _star_coloring((1, 2, 3, 1, 2, 3))
    assert not _brute_good((1, 2, 3, 1, 2, 3))
    assert good_witness(g, phi, 0) is None and not is_good(g, phi, 0)


def test_nested_pairs_witness():
    g, phi = _star_coloring((1, 2, 2, 1, 3, 4))
    w = good_witness(g, phi, 0)
    assert w == Pairs((1, 4), (2, 3))


def test_goodness_matches_brute_force_on_all_patterns():
    g = gen.star(6)
    for rim in itertools.product(range(1, 5), repeat=6):
        phi = Coloring.of((5,) + rim, 5)
        w = good_witness(g, phi, 0)
        assert (w is not None) == _brute_good(rim)
        if isinstance(w, Triple):
            assert len({phi[x] for x in w.groups[0]}) == 1
        elif isinstance(w, Pairs):
            p, q = w.first, w.second
            assert phi[p[0]] == phi[p[1]] and phi[q[0]] == phi[q[1]]
            assert not _crossing([x - 1 for x in p], [x - 1 for x in q])


def test_goodness_needs_degree_six():
    g, phi = _star_coloring((1, 2, 3, 4, 1))
    with pytest.raises(ValueError):
        good_witness(g, phi, 0)
    assert is_good(g, phi, 0)


# -- making one vertex good -------------------------------------------------------


def _short_fix_exists(g: PlaneGraph, phi: Coloring, v: int, avoid: int, depth: int) -> bool:
    """Breadth-first over all K-changes (anywhere) that never create ``avoid``."""
    nbr = tuple(sum(1 << u for u in g.adj[x]) for x in range(g.n))
    frontier = {phi.colors}
    seen = set(frontier)
    for _ in range(depth + 1):
        if any(is_good(g, Coloring(s, 5), v) for s in frontier):
            return True
        nxt = set()
        for s in frontier:
            for _, t in neighbor_moves(nbr, s, 5):
                if avoid in [t[x] for x in range(g.n) if t[x] != s[x]]:
                    continue
                if t not in seen:
                    seen.add(t)
                    nxt.add(t)
        frontier = nxt
    return False


def test_make_good_on_good_vertex_is_empty():
    g = gen.wheel(6)
    phi = Coloring.of((5, 1, 2, 3, 2, 1, 4), 5)
    assert make_good(g, phi, 0) == (phi, [])


def test_make_good_alternating_wheel():
    g = gen.wheel(6)
    phi = Coloring.of((4, 1, 2, 3, 1, 2, 3), 5)
    assert is_proper(g, phi) and not is_good(g, phi, 0)
    psi, seq = make_good(g, phi, 0)
    assert 1 <= len(seq) <= 3 and avoids(g, seq, phi, 4)
    assert replay(g, phi, seq)[0] == psi and is_good(g, psi, 0)
    assert psi[0] == 4
    assert _short_fix_exists(g, phi, 0, 4, len(seq))


@pytest.mark.parametrize("kind", ["wheel", "bipyramid"])
def test_make_good_on_every_bad_hub_coloring(kind):
    g = gen.wheel(6) if kind == "wheel" else gen.bipyramid(6)
    lengths = set()
    for rim in itertools.product(range(1, 5), repeat=6):
        if any(rim[i] == rim[(i + 1) % 6] for i in range(6)):
            continue
        bottoms = [()] if kind == "wheel" else [(c,) for c in range(1, 6) if c not in rim]
        for bottom in bottoms:
            phi = Coloring.of((5,) + rim + bottom, 5)
            psi, seq = make_good(g, phi, 0)
            assert len(seq) <= 3 and avoids(g, seq, phi, 5) and is_good(g, psi, 0)
            lengths.add(len(seq))
    assert 0 in lengths and max(lengths) >= 1


def test_make_good_needs_degree_six():
    g = gen.wheel(5)
    with pytest.raises(ValueError):
        make_good(g, Coloring.of((5, 1, 2, 1, 2, 3), 5), 0)


# -- collapse ---------------------------------------------------------------------


def test_collapse_small_degree_is_identity_up_to_deleting_v():
    g = gen.k4()
    phi = Coloring.of((1, 2, 3, 4), 5)
    h, phi_h, rec = collapse(g, 0, phi)
    assert rec.case == "small" and h.n == 3 and rec.vmap[0] is None
    assert [phi[p[0]] for p in rec.preimages] == list(phi_h.colors)
    assert all(len(p) == 1 for p in rec.preimages)


def test_collapse_five_wheel_merges_first_alike_pair():
    g = gen.wheel(5)
    phi = Coloring.of((5, 1, 2, 1, 3, 4), 5)
    h, phi_h, rec = collapse(g, 0, phi)
    validate(h)
    assert rec.case == "d5" and h.n == 4
    assert rec.vmap[1] == rec.vmap[3] and rec.vmap[0] is None
    assert (1, 3) in rec.preimages and rec.degree_after == 4
    assert is_proper(h, phi_h)
    assert nx.check_planarity(_nx(h))[0]


def test_collapse_triple_merges_three():
    g = gen.wheel(6)
    phi = Coloring.of((5, 1, 2, 1, 3, 1, 4), 5)
    h, phi_h, rec = collapse(g, 0, phi)
    validate(h)
    assert rec.case == "d6-triple" and rec.degree_after == 4
    assert (1, 3, 5) in rec.preimages
    assert is_proper(h, phi_h)


def test_collapse_pairs_case():
    g = gen.wheel(6)
    phi = Coloring.of((5, 1, 2, 3, 2, 1, 4), 5)
    assert isinstance(good_witness(g, phi, 0), Pairs)
    h, phi_h, rec = collapse(g, 0, phi)
    validate(h)
    assert rec.case == "d6-pairs" and rec.degree_after == 4 and h.n == 4
    assert is_proper(h, phi_h)


def test_collapse_rejects_bad_vertex_and_high_degree():
    g = gen.wheel(6)
    with pytest.raises(ValueError):
        collapse(g, 0, Coloring.of((4, 1, 2, 3, 1, 2, 3), 5))
    with pytest.raises(ValueError):
        collapse(gen.wheel(7), 0, Coloring.of((5, 1, 2, 1, 2, 1, 2, 3), 5))


def test_collapse_record_json():
    g = gen.wheel(5)
    _, _, rec = collapse(g, 0, Coloring.of((5, 1, 2, 1, 3, 4), 5))
    data = json.loads(rec.to_json())
    assert data == {"v": 0, "vmap": [None, 0, 1, 0, 2, 3], "case": "d5"}


@given(st.integers(min_value=0, max_value=10**6))
def test_collapse_random_triangulations(seed):
    rng = random.Random(seed)
    g = gen.random_triangulation(rng.randint(6, 40), seed=seed)
    phi = random_coloring(g, rng)
    for v in range(g.n):
        if g.degree(v) > 6:
            continue
        f = make_good(g, phi, v)[0] if g.degree(v) == 6 else phi
        h, phi_h, rec = collapse(g, v, f)
        validate(h)
        assert is_proper(h, phi_h) and rec.degree_after <= 4
        assert sorted(x for p in rec.preimages for x in p) == [x for x in range(g.n) if x != v]
        assert nx.check_planarity(_nx(h))[0]


# -- lifting -------------------------------------------------------------------


def test_lift_empty_sequence():
    g = gen.wheel(5)
    phi = Coloring.of((5, 1, 2, 1, 3, 4), 5)
    h, _, rec = collapse(g, 0, phi)
    assert lift_sequence(rec, g, phi, [], h) == []


def _lift_one(rim, move_to):
    g = gen.wheel(5)
    phi = Coloring.of((5,) + rim, 5)
    h, phi_h, rec = collapse(g, 0, phi)
    seq = [KempeMove(rec.vmap[1], move_to)]
    _, st_h = replay(h, phi_h, seq)
    lifted = lift_sequence(rec, g, phi, seq, h)
    end, st = replay(g, phi, lifted)
    for x in range(1, 6):
        assert st.per_vertex[x] == st_h.per_vertex[rec.vmap[x]]
    return lifted, end, st


def test_lift_merged_rim_vertex_with_guard_move():
    # the hub has a free color, so it steps aside before both preimages flip
    lifted, end, st = _lift_one((1, 2, 1, 3, 2), 5)
    assert lifted == [KempeMove(0, 4), KempeMove(1, 5), KempeMove(3, 5)]
    assert end[1] == end[3] == 5 and end[0] == 4 and st.per_vertex[0] == 1


def test_lift_merged_rim_vertex_with_hub_riding_along():
    # every color is around the hub, so it flips together with the chain
    lifted, end, st = _lift_one((1, 2, 1, 3, 4), 5)
    assert lifted == [KempeMove(1, 5)]
    assert end[1] == end[3] == 5 and end[0] == 1 and st.per_vertex[0] == 1


@given(st.integers(min_value=0, max_value=10**6))
def test_lift_preserves_per_vertex_counts(seed):
    check_lift_instance(random.Random(seed))


# -- making a set good ---------------------------------------------------------------


def test_make_all_good_empty_set():
    g = gen.octahedron()
    phi = Coloring.of((1, 2, 3, 2, 3, 4), 5)
    assert make_all_good(g, phi, []) == (phi, [])


def test_make_all_good_low_degree_is_free():
    g = gen.icosahedron()
    rng = random.Random(3)
    phi = random_coloring(g, rng)
    c = phi[0]
    I = [v for v in range(g.n) if phi[v] == c]
    assert make_all_good(g, phi, I) == (phi, [])
    assert make_all_good(g, phi, [0]) == (phi, [])


def test_make_all_good_rejects_bad_sets():
    g = gen.octahedron()
    phi = Coloring.of((1, 2, 3, 2, 3, 4), 5)
    with pytest.raises(ValueError):
        make_all_good(g, phi, [0, 1])
    with pytest.raises(ValueError):
        make_all_good(g, phi, [1, 5])


def _degree_six_set(g, phi, rng):
    classes = {}
    for v in range(g.n):
        if g.degree(v) <= 6:
            classes.setdefault(phi[v], []).append(v)
    best = max(classes.values(), key=lambda vs: (sum(g.degree(v) == 6 for v in vs), len(vs)))
    return sorted(rng.sample(best, max(1, len(best) * 2 // 3)))


@given(st.integers(min_value=0, max_value=10**6))
def test_make_all_good_counts_and_avoidance(seed):
    rng = random.Random(seed)
    g = gen.random_triangulation(rng.randint(8, 50), seed=seed)
    phi = random_coloring(g, rng)
    I = _degree_six_set(g, phi, rng)
    psi, seq = make_all_good(g, phi, I)
    end, stats = replay(g, phi, seq)
    assert end == psi
    assert avoids(g, seq, phi, phi[I[0]])
    assert stats.max_count <= 3 * len(I)
    assert all(psi[v] == phi[v] for v in I)


def test_good_stack_levels_are_good_where_collapsed():
    rng = random.Random(11)
    g = gen.random_triangulation(40, seed=11)
    phi = random_coloring(g, rng)
    I = _degree_six_set(g, phi, rng)
    stack = good_stack(g, phi, I)
    assert len(stack.levels) == len(I)
    for graph, rec, end in stack.levels:
        assert is_good(graph, end, rec.v)
    assert stack.final_graph.n == g.n - len(I) - sum(
        sum(len(p) - 1 for p in rec.preimages) for _, rec, _ in stack.levels)


def test_paper_violation_is_an_assertion():
    assert issubclass(PaperViolation, AssertionError)
