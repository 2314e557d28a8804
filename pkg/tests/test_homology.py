"""Simplicial homology, Betti tables, and the depth engine.

Every Betti number is computed twice: the production path sums homology of
restricted complexes, and an independent generator-subset oracle minimalizes
strand-by-strand. Frozen values below were cross-checked between the two.
"""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coverdepth.errors import GuardError, InputError
from coverdepth.graphs import Graph
from coverdepth.homology import (
    F2,
    RATIONALS,
    BettiTable,
    FieldChoice,
    SimplicialComplex,
    betti_table_squarefree,
    depth_symbolic_cover,
    independence_complex,
    pd_reg_depth,
    reduced_homology_dims,
    reg_edge_ideal,
    reg_edge_ideal_layered,
    stanley_reisner_complex,
    taylor_betti_oracle,
)
from coverdepth.ideals import (
    base_ring,
    cover_ideal,
    edge_ideal,
    monomial_ideal,
    power,
)
from coverdepth.layered import as_plain_graph, build_gk

from _oracles import brute_ordered_matching, brute_reduced_homology


def path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(1, n)))


def cycle(n: int) -> Graph:
    return Graph(n, tuple(tuple(sorted((i, i % n + 1))) for i in range(1, n + 1)))


def complete(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(1, n + 1), 2)))


K33 = Graph(6, ((1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)))
THREE_K2 = Graph(6, ((1, 2), (3, 4), (5, 6)))


@st.composite
def small_graphs(draw, max_n: int = 5, min_edges: int = 0):
    n = draw(st.integers(min_value=2 if min_edges else 1, max_value=max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    edges = draw(st.sets(st.sampled_from(pairs), min_size=min_edges) if pairs
                 else st.just(set()))
    return Graph(n, tuple(sorted(edges)))


@st.composite
def small_complexes(draw):
    """A complex on up to five vertices from a random antichain of non-faces."""
    n = draw(st.integers(min_value=1, max_value=5))
    subsets = [
        frozenset(c)
        for size in range(1, n + 1)
        for c in itertools.combinations(range(1, n + 1), size)
    ]
    family = draw(st.sets(st.sampled_from(subsets), max_size=6))
    minimal = {s for s in family if not any(t < s for t in family)}
    return SimplicialComplex(tuple(range(1, n + 1)), frozenset(minimal))


# ---------------------------------------------------------------------------
# fields and complexes
# ---------------------------------------------------------------------------


def test_field_choice():
    assert RATIONALS.char == 0 and RATIONALS.label == "q"
    assert F2.char == 2 and F2.label == "f2"
    assert FieldChoice(5).label == "f5"
    for bad in (-1, 1, 4, 6):
        with pytest.raises(InputError):
            FieldChoice(bad)


def test_simplicial_complex_validation():
    with pytest.raises(InputError):
        SimplicialComplex((1, 1), frozenset())
    with pytest.raises(InputError):
        SimplicialComplex((1, 2), frozenset({frozenset({3})}))
    with pytest.raises(InputError):
        SimplicialComplex(
            (1, 2), frozenset({frozenset({1}), frozenset({1, 2})})
        )
    c = SimplicialComplex((1, 2, 3), frozenset({frozenset({1, 2})}))
    assert c.is_face((1, 3)) and not c.is_face((1, 2, 3))
    with pytest.raises(InputError):
        c.is_face((4,))
    assert SimplicialComplex((1,), frozenset({frozenset()})).is_void
    assert not c.is_void


def test_stanley_reisner_complex():
    full = stanley_reisner_complex(monomial_ideal(base_ring(3), []))
    assert full.non_faces == frozenset() and full.is_face((1, 2, 3))
    tri = stanley_reisner_complex(edge_ideal(complete(3)))
    assert tri == independence_complex(complete(3))
    assert tri.non_faces == frozenset(
        {frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3})}
    )
    with pytest.raises(InputError):
        stanley_reisner_complex(monomial_ideal(base_ring(2), [(2, 0)]))
    with pytest.raises(InputError):
        stanley_reisner_complex(monomial_ideal(base_ring(2), [(0, 0)]))


def test_independence_complex():
    c = independence_complex(path(3))
    assert c.is_face((1, 3)) and not c.is_face((1, 2))
    assert independence_complex(Graph(2, ())).non_faces == frozenset()


# ---------------------------------------------------------------------------
# reduced homology
# ---------------------------------------------------------------------------


def test_reduced_homology_examples():
    full = SimplicialComplex((1, 2, 3), frozenset())
    assert reduced_homology_dims(full) == {-1: 0, 0: 0, 1: 0, 2: 0}
    two_points = SimplicialComplex((1, 2), frozenset({frozenset({1, 2})}))
    assert reduced_homology_dims(two_points) == {-1: 0, 0: 1}
    hollow = SimplicialComplex((1, 2, 3), frozenset({frozenset({1, 2, 3})}))
    assert reduced_homology_dims(hollow) == {-1: 0, 0: 0, 1: 1}
    empty = SimplicialComplex((), frozenset())
    assert reduced_homology_dims(empty) == {-1: 1}
    void = SimplicialComplex((1, 2), frozenset({frozenset()}))
    assert reduced_homology_dims(void) == {}
    # the independence complex of C4 is a pair of disjoint edges
    assert reduced_homology_dims(independence_complex(cycle(4))) == {
        -1: 0,
        0: 1,
        1: 0,
    }


def test_reduced_homology_guard():
    c = SimplicialComplex((1, 2, 3), frozenset())
    with pytest.raises(GuardError):
        reduced_homology_dims(c, guard=2)


def test_reduced_homology_projective_plane():
    """A six-vertex closed surface whose homology depends on the field."""
    triangles = [
        (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 6), (1, 4, 5),
        (2, 3, 4), (2, 3, 5), (2, 4, 6), (3, 5, 6), (4, 5, 6),
    ]
    for e in itertools.combinations(range(1, 7), 2):
        assert sum(1 for t in triangles if set(e) <= set(t)) == 2
    missing = [
        t for t in itertools.combinations(range(1, 7), 3) if t not in triangles
    ]
    assert len(missing) == 10
    # the missing triples already exclude every larger subset
    for q in itertools.combinations(range(1, 7), 4):
        assert any(set(m) <= set(q) for m in missing)
    c = SimplicialComplex(
        tuple(range(1, 7)), frozenset(frozenset(m) for m in missing)
    )
    assert reduced_homology_dims(c, RATIONALS) == {-1: 0, 0: 0, 1: 0, 2: 0}
    assert reduced_homology_dims(c, F2) == {-1: 0, 0: 0, 1: 1, 2: 1}
    assert reduced_homology_dims(c, FieldChoice(3)) == {-1: 0, 0: 0, 1: 0, 2: 0}


@given(g=small_graphs(max_n=6))
@settings(max_examples=60, deadline=None)
def test_reduced_homology_matches_oracle_on_graphs(g):
    got = reduced_homology_dims(independence_complex(g))
    expected = brute_reduced_homology(
        list(range(1, g.n + 1)), [frozenset(e) for e in g.edges]
    )
    assert got == expected


@given(c=small_complexes())
@settings(max_examples=60, deadline=None)
def test_reduced_homology_matches_oracle_on_complexes(c):
    got = reduced_homology_dims(c)
    expected = brute_reduced_homology(list(c.vertex_set), list(c.non_faces))
    if c.is_void:
        assert got == {}
    else:
        assert got == expected


@given(g=small_graphs(max_n=5), data=st.data())
@settings(max_examples=40, deadline=None)
def test_reduced_homology_relabeling_invariance(g, data):
    perm = data.draw(st.permutations(range(1, g.n + 1)))
    relabel = dict(zip(range(1, g.n + 1), perm))
    h = Graph(
        g.n, tuple(sorted(tuple(sorted((relabel[a], relabel[b]))) for a, b in g.edges))
    )
    assert reduced_homology_dims(independence_complex(g)) == reduced_homology_dims(
        independence_complex(h)
    )


# ---------------------------------------------------------------------------
# Betti tables
# ---------------------------------------------------------------------------


def test_betti_table_validation():
    t = BettiTable(2, ((0, 0, 1), (1, 1, 2), (2, 2, 1)))
    assert t.beta(1, 1) == 2 and t.beta(1, 2) == 0
    assert t.pd == 2 and t.reg == 0
    with pytest.raises(InputError):
        BettiTable(2, ((1, 1, 2), (0, 0, 1)))
    with pytest.raises(InputError):
        BettiTable(2, ((0, 0, 1), (1, 1, 0)))
    with pytest.raises(InputError):
        BettiTable(2, ((0, 0, 1), (3, 3, 1)))
    with pytest.raises(InputError):
        BettiTable(2, ((1, 1, 2),))


def test_betti_table_json_round_trip():
    t = BettiTable(4, ((0, 0, 1), (1, 2, 3), (2, 3, 2)))
    data = t.to_json()
    assert data == {"num_vars": 4, "entries": [[0, 0, 1], [1, 2, 3], [2, 3, 2]]}
    assert BettiTable.from_json(data) == t


def test_betti_two_variables():
    ideal = monomial_ideal(base_ring(2), [(1, 0), (0, 1)])
    for f in (RATIONALS, F2):
        t = betti_table_squarefree(ideal, f)
        assert t.entries == ((0, 0, 1), (1, 1, 2), (2, 2, 1))
        assert taylor_betti_oracle(ideal, f) == t
    assert pd_reg_depth(ideal) == (2, 0, 0)


def test_betti_edge_ideal_triangle():
    ideal = edge_ideal(complete(3))
    for f in (RATIONALS, F2):
        t = betti_table_squarefree(ideal, f)
        assert t.entries == ((0, 0, 1), (1, 2, 3), (2, 3, 2))
        assert taylor_betti_oracle(ideal, f) == t
    assert pd_reg_depth(ideal) == (2, 1, 1)


def test_betti_cover_ideal_path4():
    ideal = cover_ideal(path(4))
    t = betti_table_squarefree(ideal)
    assert t.entries == ((0, 0, 1), (1, 2, 3), (2, 3, 2))
    assert taylor_betti_oracle(ideal) == t
    assert pd_reg_depth(ideal) == (2, 1, 2)


def test_betti_zero_ideal():
    ideal = monomial_ideal(base_ring(3), [])
    assert betti_table_squarefree(ideal).entries == ((0, 0, 1),)
    assert pd_reg_depth(ideal) == (0, 0, 3)


def test_betti_input_errors():
    with pytest.raises(InputError):
        betti_table_squarefree(monomial_ideal(base_ring(2), [(0, 0)]))
    with pytest.raises(InputError):
        betti_table_squarefree(monomial_ideal(base_ring(2), [(2, 0)]))
    with pytest.raises(GuardError):
        betti_table_squarefree(edge_ideal(path(4)), guard=3)
    with pytest.raises(GuardError):
        taylor_betti_oracle(edge_ideal(path(4)), guard=2)


def test_taylor_handles_non_squarefree():
    square = power(monomial_ideal(base_ring(2), [(1, 0), (0, 1)]), 2)
    assert taylor_betti_oracle(square).entries == ((0, 0, 1), (1, 2, 3), (2, 3, 2))
    assert pd_reg_depth(square) == (2, 1, 0)


@given(g=small_graphs(max_n=5, min_edges=1), f=st.sampled_from([RATIONALS, F2]))
@settings(max_examples=40, deadline=None)
def test_betti_matches_taylor_on_edge_and_cover_ideals(g, f):
    for ideal in (edge_ideal(g), cover_ideal(g)):
        assert betti_table_squarefree(ideal, f) == taylor_betti_oracle(ideal, f)


@given(c=small_complexes(), f=st.sampled_from([RATIONALS, F2]))
@settings(max_examples=40, deadline=None)
def test_betti_matches_taylor_on_random_squarefree_ideals(c, f):
    if c.is_void or not c.non_faces:
        return
    n = len(c.vertex_set)
    gens = [
        tuple(1 if v in nf else 0 for v in range(1, n + 1)) for nf in c.non_faces
    ]
    ideal = monomial_ideal(base_ring(n), gens)
    assert betti_table_squarefree(ideal, f) == taylor_betti_oracle(ideal, f)


@given(g=small_graphs(max_n=5, min_edges=1))
@settings(max_examples=40, deadline=None)
def test_cover_ideal_pd_equals_edge_ideal_reg(g):
    # Alexander duality swaps projective dimension and regularity
    assert betti_table_squarefree(cover_ideal(g)).pd == reg_edge_ideal(g)


# ---------------------------------------------------------------------------
# regularity and depth
# ---------------------------------------------------------------------------


def test_reg_edge_ideal_examples():
    assert reg_edge_ideal(path(2)) == 2
    assert reg_edge_ideal(path(4)) == 2
    assert reg_edge_ideal(cycle(5)) == 3
    assert reg_edge_ideal(cycle(6)) == 3
    assert reg_edge_ideal(K33) == 2
    assert reg_edge_ideal(THREE_K2) == 4


def test_reg_edge_ideal_errors():
    with pytest.raises(InputError):
        reg_edge_ideal(Graph(3, ()))
    with pytest.raises(GuardError):
        reg_edge_ideal(path(4), guard=3)


@pytest.mark.parametrize(
    "g, k",
    [(path(2), 1), (path(2), 2), (path(2), 3), (path(4), 2), (complete(3), 2),
     (cycle(4), 2)],
)
def test_reg_layered_matches_plain_sweep(g, k):
    gk = build_gk(g, k)
    plain, _labels = as_plain_graph(gk)
    assert reg_edge_ideal_layered(gk) == reg_edge_ideal(plain)


@given(g=small_graphs(max_n=4, min_edges=1), k=st.integers(min_value=1, max_value=2))
@settings(max_examples=25, deadline=None)
def test_reg_layered_matches_plain_sweep_random(g, k):
    gk = build_gk(g, k)
    plain, _labels = as_plain_graph(gk)
    assert reg_edge_ideal_layered(gk) == reg_edge_ideal(plain)


def test_depth_symbolic_cover_examples():
    assert [depth_symbolic_cover(path(2), k) for k in (1, 2, 3, 4)] == [0, 0, 0, 0]
    assert [depth_symbolic_cover(path(4), k) for k in (1, 2, 3)] == [2, 1, 1]
    assert [depth_symbolic_cover(complete(3), k) for k in (1, 2)] == [1, 1]
    assert depth_symbolic_cover(THREE_K2, 3) == 2
    assert depth_symbolic_cover(cycle(6), 3) == 3
    assert depth_symbolic_cover(K33, 2) == 4


def test_depth_symbolic_cover_errors():
    with pytest.raises(InputError):
        depth_symbolic_cover(Graph(2, ()), 1)
    with pytest.raises(InputError):
        depth_symbolic_cover(path(2), 0)
    with pytest.raises(GuardError):
        depth_symbolic_cover(path(4), 5)


@given(g=small_graphs(max_n=4, min_edges=1), k=st.integers(min_value=1, max_value=3))
@settings(max_examples=30, deadline=None)
def test_depth_lower_bound_small_k(g, k):
    t = brute_ordered_matching(g.n, set(g.edges))
    depth = depth_symbolic_cover(g, k)
    assert g.n - t - 1 <= depth <= g.n - 1
