import math
import random

import pytest

import oracles
from conftest import graphs_upto
from sqfpow.graph_classes import add_two_pendants, complete_with_pendants
from sqfpow.hypergraph import (
    Hypergraph,
    complete_graph,
    cover_number,
    cycle_graph,
    disjoint_edges,
    graph,
    matching_number,
    path_graph,
    vset,
)
from sqfpow.ideals import SqfIdeal
from sqfpow.powers import (
    Filtration,
    PowerKind,
    check_del_condition,
    check_splf_axioms,
    is_principal_full_support,
    mixed_sum,
    mixed_sum_full,
    nu_F,
    nu_F_by_search,
    power,
    sqf_power,
    sqf_symbolic_power,
)

ORD, SYM = PowerKind.ORDINARY, PowerKind.SYMBOLIC


def I(n, *gens):
    return SqfIdeal(n, tuple(vset(g) for g in gens))


def test_kind_parse():
    assert PowerKind.parse("Symbolic") is SYM
    assert PowerKind.parse(ORD) is ORD
    with pytest.raises(ValueError):
        PowerKind.parse("regular")


def test_sqf_power_examples():
    p4 = path_graph(4)
    assert sqf_power(p4, 1) == I(4, (0, 1), (1, 2), (2, 3))
    assert sqf_power(p4, 2) == I(4, (0, 1, 2, 3))
    assert sqf_power(p4, 3).is_zero
    assert sqf_power(p4, 0).is_unit
    c5 = cycle_graph(5)
    assert len(sqf_power(c5, 2).gens) == 5


def test_sqf_power_vanishes_exactly_past_matching_number():
    for g in graphs_upto(5):
        nu = matching_number(g)
        for k in range(1, nu + 2):
            assert sqf_power(g, k).is_zero == (k > nu)
            assert sorted(sqf_power(g, k).gens) == oracles.sqf_power_gens(g, k)


@pytest.mark.parametrize("t", range(1, 5))
def test_disjoint_edges_power_generator_counts(t):
    h = disjoint_edges(t)
    for k in range(1, t + 1):
        assert len(sqf_power(h, k).gens) == math.comb(t, k)
        assert sqf_symbolic_power(h, k) == sqf_power(h, k)


def test_symbolic_power_examples():
    k3 = complete_graph(3)
    assert sqf_symbolic_power(k3, 2) == I(3, (0, 1, 2))
    assert sqf_power(k3, 2).is_zero
    assert sqf_symbolic_power(k3, 3).is_zero
    c4 = cycle_graph(4)
    assert sqf_symbolic_power(c4, 2) == sqf_power(c4, 2)
    c5 = cycle_graph(5)
    assert sqf_symbolic_power(c5, 3).gens == (vset(range(5)),)


def test_first_symbolic_power_is_edge_ideal():
    for g in graphs_upto(5):
        assert sqf_symbolic_power(g, 1) == SqfIdeal.edge_ideal(g)
        assert sqf_power(g, 1) == SqfIdeal.edge_ideal(g)


def test_symbolic_power_matches_brute_force_definition():
    for g in graphs_upto(6):
        for k in range(1, cover_number(g) + 2):
            assert sorted(sqf_symbolic_power(g, k).gens) == oracles.symbolic_power_gens(g, k)


def test_symbolic_power_of_hypergraph():
    h = Hypergraph(5, [(0, 1, 2), (2, 3), (3, 4, 0)])
    for k in range(1, 4):
        assert sorted(sqf_symbolic_power(h, k).gens) == oracles.symbolic_power_gens(h, k)


def test_nu_identities():
    for g in graphs_upto(5):
        assert nu_F(g, ORD) == matching_number(g) == nu_F_by_search(g, ORD)
        assert nu_F(g, SYM) == cover_number(g) == nu_F_by_search(g, SYM)


def test_nu_additive_over_disjoint_union():
    from sqfpow.hypergraph import disjoint_union
    rng = random.Random(4)
    gs = graphs_upto(4)
    for _ in range(30):
        a, b = rng.choice(gs), rng.choice(gs)
        u, _ = disjoint_union(a, b)
        for kind in PowerKind:
            assert nu_F(u, kind) == nu_F(a, kind) + nu_F(b, kind)


def test_ordinary_contained_in_symbolic():
    for g in graphs_upto(6):
        for k in range(1, matching_number(g) + 1):
            assert sqf_power(g, k) <= sqf_symbolic_power(g, k)


@pytest.mark.parametrize("n", range(2, 7))
def test_principal_for_complete_graphs(n):
    assert is_principal_full_support(complete_graph(n), SYM)


@pytest.mark.parametrize("n", range(2, 6))
def test_not_principal_with_fewer_pendants_than_vertices(n):
    for r in range(1, n):
        assert not is_principal_full_support(complete_with_pendants(n, r), SYM)
    assert is_principal_full_support(complete_with_pendants(n, n), SYM)


def test_not_principal_with_two_pendants_on_one_vertex():
    for g in [complete_graph(3), path_graph(3), cycle_graph(4)]:
        for kind in PowerKind:
            assert not is_principal_full_support(add_two_pendants(g, 0), kind)


def test_principality_needs_an_edge():
    with pytest.raises(ValueError):
        is_principal_full_support(Hypergraph(3, []), SYM)


def test_filtration_validation():
    with pytest.raises(ValueError):
        Filtration((I(2, (0,)),))
    with pytest.raises(ValueError):
        Filtration((SqfIdeal.unit(2), SqfIdeal.zero(2)))
    with pytest.raises(ValueError):
        Filtration((SqfIdeal.unit(3), I(3, (0, 1)), I(3, (2,))))
    f = Filtration((SqfIdeal.unit(2), I(2, (0,)), SqfIdeal.zero(2), SqfIdeal.zero(2)))
    assert f.nu == 1
    assert f[5].is_zero and f[-1].is_unit


def test_filtrations_of_graphs_are_decreasing_with_growing_degree():
    for g in graphs_upto(6):
        if not g.edges:
            continue
        for kind in PowerKind:
            f = Filtration.of(g, kind)
            assert f.nu == nu_F(g, kind)
            for k in range(1, f.nu + 1):
                assert f[k] <= f[k - 1]
                assert f[k].delta() > f[k - 1].delta()
            assert all(check_del_condition(f))


def test_del_condition_violation_detected():
    f = Filtration((SqfIdeal.unit(3), I(3, (0, 1)), I(3, (0, 1, 2))))
    assert check_del_condition(f) == [True, False]


def test_mixed_sum_low_degrees():
    a = Filtration.of(complete_graph(3), SYM)
    b = Filtration.of(path_graph(3), SYM)
    assert mixed_sum(a, b, 0).is_unit
    assert mixed_sum(a, b, 1) == I(6, (0, 1), (0, 2), (1, 2), (3, 4), (4, 5))
    assert mixed_sum(a, b, a.nu + b.nu + 1).is_zero


def test_mixed_sum_two_triangles():
    t = Filtration.of(complete_graph(3), SYM)
    q2 = mixed_sum(t, t, 2)
    edges = [(0, 1), (0, 2), (1, 2)]
    expected = [(0, 1, 2), (3, 4, 5)] + [e + tuple(v + 3 for v in f) for e in edges for f in edges]
    assert q2 == I(6, *expected)
    assert mixed_sum(t, t, 4) == I(6, tuple(range(6)))
    assert mixed_sum(t, t, 5).is_zero


def test_mixed_sum_is_the_power_of_the_disjoint_union():
    from sqfpow.hypergraph import disjoint_union
    rng = random.Random(9)
    gs = [g for g in graphs_upto(4) if g.edges]
    for _ in range(30):
        a, b = rng.choice(gs), rng.choice(gs)
        u, _ = disjoint_union(a, b)
        for kind in PowerKind:
            fa, fb = Filtration.of(a, kind), Filtration.of(b, kind)
            for n in range(0, fa.nu + fb.nu + 2):
                q = mixed_sum(fa, fb, n)
                assert q == mixed_sum_full(fa, fb, n)
                assert q == power(u, n, kind)


def test_mixed_sum_rejects_negative_n():
    f = Filtration.of(complete_graph(2), SYM)
    with pytest.raises(ValueError):
        mixed_sum(f, f, -1)


def test_axioms_hold_for_both_kinds():
    samples = graphs_upto(4) + (Hypergraph(4, [(0, 1, 2), (2, 3)]),)
    for kind in PowerKind:
        report = check_splf_axioms(samples, kind, max_union_vertices=6)
        assert report.ok, report.violations[:3]
        assert all(report.checked[a] > 0 for a in "abcd")


def test_axiom_checker_catches_a_corrupted_power_function():
    def broken(h, k):
        if k == 2:
            return SqfIdeal.zero(h.n)
        return sqf_power(h, k)

    report = check_splf_axioms(graphs_upto(3), broken, max_union_vertices=6)
    assert not report.ok
    assert {v["axiom"] for v in report.violations} == {"d"}
    assert report.to_json()["kind"] == "broken"


def test_axiom_checker_catches_wrong_first_power():
    def shifted(h, k):
        return sqf_power(h, k + 1) if k >= 1 else SqfIdeal.unit(h.n)

    report = check_splf_axioms([graph(3, [(0, 1), (1, 2)])], shifted, induced_subgraphs=False)
    assert any(v["axiom"] == "a" for v in report.violations)
