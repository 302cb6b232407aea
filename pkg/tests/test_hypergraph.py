import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import graphs_upto
from sqfpow.hypergraph import (
    Hypergraph,
    complete_graph,
    connected_components,
    cover_number,
    cycle_graph,
    disjoint_edges,
    disjoint_union,
    empty_graph,
    graph,
    independence_number,
    induced,
    induced_matching_number,
    is_independent,
    is_vertex_cover,
    matching_number,
    maximal_independent_sets,
    minimal_vertex_covers,
    neighborhoods,
    path_graph,
    star_graph,
    vset,
)


def test_induced_triangle_on_two_vertices():
    sub, idx = induced(complete_graph(3), vset([0, 1]))
    assert sub.edge_lists() == [[0, 1]]
    assert idx == (0, 1)


def test_induced_path_endpoints_are_isolated():
    sub, idx = induced(path_graph(3), vset([0, 2]))
    assert sub.n == 2 and not sub.edges
    assert idx == (0, 2)


def test_induced_c5_on_consecutive_vertices_is_p4():
    c5 = cycle_graph(5)
    for start in range(5):
        w = vset((start + i) % 5 for i in range(4))
        sub, idx = induced(c5, w)
        expected = {frozenset(oracles.bits(e)) for e in c5.edges if e & w == e}
        assert {frozenset(idx[v] for v in oracles.bits(e)) for e in sub.edges} == expected
        assert len(sub.edges) == 3
        assert sorted(sub.degree(v) for v in range(4)) == [1, 1, 2, 2]


def test_induced_outside_universe_raises():
    with pytest.raises(ValueError):
        induced(path_graph(3), 1 << 5)


def test_induced_empty_set():
    sub, idx = induced(cycle_graph(4), 0)
    assert sub.n == 0 and idx == ()


def test_c5_matching_numbers():
    c5 = cycle_graph(5)
    assert matching_number(c5) == 2
    assert induced_matching_number(c5) == 1
    assert oracles.matching_number(c5) == 2
    assert oracles.induced_matching_number(c5) == 1


@pytest.mark.parametrize("t", range(0, 6))
def test_disjoint_edges_matching_numbers(t):
    h = disjoint_edges(t)
    assert matching_number(h) == t
    assert induced_matching_number(h) == t


def test_p6_induced_matching():
    p6 = path_graph(6)
    assert len(p6.edges) == 5
    assert induced_matching_number(p6) == 2 == oracles.induced_matching_number(p6)


def test_edgeless_conventions():
    h = empty_graph(4)
    assert matching_number(h) == 0
    assert induced_matching_number(h) == 0
    assert minimal_vertex_covers(h) == (0,)
    assert cover_number(h) == 0
    assert independence_number(h) == 4


@pytest.mark.parametrize("n", range(2, 8))
def test_complete_graph_covers(n):
    g = complete_graph(n)
    assert cover_number(g) == n - 1
    assert independence_number(g) == 1
    full = (1 << n) - 1
    assert set(minimal_vertex_covers(g)) == {full & ~(1 << v) for v in range(n)}


def test_single_edge_covers():
    g = graph(2, [(0, 1)])
    assert cover_number(g) == 1
    assert set(minimal_vertex_covers(g)) == {1, 2}


def test_c5_cover_and_independence():
    c5 = cycle_graph(5)
    assert cover_number(c5) == 3 == oracles.cover_number(c5)
    assert independence_number(c5) == 2 == oracles.alpha(c5)


def test_invariants_match_brute_force(graphs6):
    for g in graphs6:
        if g.n > 6:
            continue
        assert matching_number(g) == oracles.matching_number(g)
        assert induced_matching_number(g) == oracles.induced_matching_number(g)
        assert sorted(minimal_vertex_covers(g)) == oracles.minimal_covers(g)
        assert independence_number(g) == oracles.alpha(g)


def test_alpha_plus_beta_is_n_exhaustive_to_seven():
    for g in graphs_upto(7):
        assert independence_number(g) + cover_number(g) == g.n
        mis = maximal_independent_sets(g)
        assert max(s.bit_count() for s in mis) == independence_number(g)
        assert all(is_independent(g, s) for s in mis)
        assert all(is_vertex_cover(g, c) for c in minimal_vertex_covers(g))


def test_hypergraph_covers_by_transversals():
    h = Hypergraph(5, [(0, 1, 2), (2, 3), (3, 4, 0)])
    assert sorted(minimal_vertex_covers(h)) == oracles.minimal_covers(h)
    assert matching_number(h) == oracles.matching_number(h)
    assert induced_matching_number(h) == oracles.induced_matching_number(h)


def test_disjoint_union_examples():
    two, off = disjoint_union(graph(2, [(0, 1)]), graph(2, [(0, 1)]))
    assert off == 2 and two.edge_lists() == [[0, 1], [2, 3]]
    g, _ = disjoint_union(complete_graph(3), complete_graph(2))
    assert g.n == 5 and len(g.edges) == 4


def test_matching_number_additive_over_disjoint_union():
    rng = random.Random(3)
    gs = graphs_upto(5)
    for _ in range(40):
        a, b = rng.choice(gs), rng.choice(gs)
        u, _ = disjoint_union(a, b)
        assert matching_number(u) == matching_number(a) + matching_number(b)


def test_neighborhoods():
    star = star_graph(3)
    closed, open_ = neighborhoods(star, 1)
    assert closed == 0b1111 and open_ == 0b1110
    h = graph(3, [(0, 1)])
    assert neighborhoods(h, 1 << 2) == (1 << 2, 0)
    k4_minus = graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])  # missing 23
    closed, _ = neighborhoods(k4_minus, 1 << 2)
    assert closed.bit_count() == 3


def test_restriction_composes():
    rng = random.Random(5)
    for g in graphs_upto(6)[::7]:
        w1 = rng.randrange(1 << g.n)
        w2 = w1 & rng.randrange(1 << g.n)
        sub1, idx1 = induced(g, w1)
        w2_rel = vset(i for i, v in enumerate(idx1) if w2 >> v & 1)
        sub12, idx12 = induced(sub1, w2_rel)
        direct, idx_direct = induced(g, w2)
        assert sub12 == direct
        assert tuple(idx1[i] for i in idx12) == idx_direct


def test_induced_matching_monotone_under_induced_subgraphs():
    rng = random.Random(11)
    gs = graphs_upto(6)
    for _ in range(150):
        g = rng.choice(gs)
        w = rng.randrange(1 << g.n)
        assert induced_matching_number(induced(g, w)[0]) <= induced_matching_number(g)


def test_components_keep_isolated_vertices():
    h = graph(5, [(0, 1), (2, 3)])
    assert sorted(connected_components(h)) == sorted([0b11, 0b1100, 0b10000])


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=n), max_size=8))
))
def test_constructor_rejects_nested_edges_and_dedupes(data):
    n, edges = data
    masks = set(vset(e) for e in edges)
    nested = any(a != b and a & b == a for a in masks for b in masks)
    if nested:
        with pytest.raises(ValueError):
            Hypergraph(n, [tuple(e) for e in edges])
    else:
        h = Hypergraph(n, [tuple(e) for e in edges])
        assert h.edges == tuple(sorted(masks))


def test_constructor_rejects_bad_edges():
    with pytest.raises(ValueError):
        Hypergraph(3, [()])
    with pytest.raises(ValueError):
        Hypergraph(3, [(0, 5)])
    with pytest.raises(ValueError):
        Hypergraph(65, [])
    with pytest.raises(ValueError):
        graph(3, [(0, 1, 2)])


def test_json_roundtrip():
    h = Hypergraph(5, [(0, 1, 2), (3, 4)])
    assert Hypergraph.from_json(h.to_json()) == h
