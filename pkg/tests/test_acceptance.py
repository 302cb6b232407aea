"""Acceptance criteria 1-11, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
Every comparison is exact integer or exact ideal equality.
"""

import os
import random
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest  # noqa: E402

from sqfpow.admissible import adm_number, ind_number  # noqa: E402
from sqfpow.campaign import CampaignSpec, run_campaign  # noqa: E402
from sqfpow.graph_classes import (  # noqa: E402
    add_two_pendants,
    build_attach_Kn,
    build_whiskered_attach,
    complete_with_pendants,
    enumerate_graphs,
    whisker_complete,
)
from sqfpow.hypergraph import complete_graph, cover_number, disjoint_edges, minimal_vertex_covers  # noqa: E402
from sqfpow.ideals import SqfIdeal, symbolic_power_oracle  # noqa: E402
from sqfpow.powers import (  # noqa: E402
    Filtration,
    PowerKind,
    check_del_condition,
    check_splf_axioms,
    is_principal_full_support,
    sqf_power,
    sqf_symbolic_power,
)
from sqfpow.regularity import betti_table, betti_table_koszul, regularity, verify_mixed_sum_regularity  # noqa: E402

ORD, SYM = PowerKind.ORDINARY, PowerKind.SYMBOLIC


def graphs(max_n, classes=(), connected=False, min_n=1):
    return [g for n in range(min_n, max_n + 1) for g in enumerate_graphs(n, classes, connected=connected)]


def campaign(**kw):
    return run_campaign(CampaignSpec(budget_ms=None, campaign_budget_ms=None, **kw))


def campaign_result(report, require_equality):
    s = report.summary
    bad = [r for r in report.rows if r["status"] in ("violation", "skipped")]
    if require_equality:
        bad += [r for r in report.rows if r["status"] == "strict"]
    detail = f"{s['instances']} graphs, {s['rows']} rows, {s['equalities']} equal, {s['violations']} violations"
    if bad:
        detail += f"; first failure {bad[0]['graph6']} k={bad[0]['k']} status={bad[0]['status']}"
    return not bad and s["rows"] > 0, detail


# --- criteria ------------------------------------------------------------------------

def criterion_1():
    report = campaign(family="chordal", max_n=6, connected=True, kind=SYM)
    return campaign_result(report, True)


def criterion_2():
    report = campaign(family="block", max_n=7, connected=True, kind=SYM)
    ok, detail = campaign_result(report, True)
    beyond = report.summary["range_beyond_induced_matching"]
    return ok, detail + f"; {beyond} rows have k beyond the induced matching number"


def criterion_3():
    report = campaign(family="cm_chordal", max_n=7, kind=SYM, k=2)
    ok, detail = campaign_result(report, True)
    eligible = sum(1 for g in graphs(7, ("cm_chordal",)) if cover_number(g) >= 2)
    if report.summary["rows"] != eligible:
        return False, detail + f"; expected {eligible} graphs with beta >= 2"
    return ok, detail


def criterion_4():
    results = [campaign_result(campaign(family="all", max_n=5, kind=kind), False) for kind in (ORD, SYM)]
    return all(ok for ok, _ in results), " | ".join(d for _, d in results)


def criterion_5():
    checked = 0
    for n in range(2, 8):
        for k in range(1, n):
            ind, _ = ind_number(complete_graph(n), k)
            adm, _ = adm_number(complete_graph(n), k, SYM)
            reg = regularity(sqf_symbolic_power(complete_graph(n), k))
            if ind != 1 or adm != 1 or reg != k + 1:
                return False, f"K_{n}, k={k}: ind={ind} adm={adm} reg={reg}"
            checked += 1
    return True, f"{checked} (n, k) pairs"


def criterion_6():
    checked = 0
    for t in range(1, 6):
        h = disjoint_edges(t)
        for k in range(1, t + 1):
            reg = regularity(sqf_power(h, k))
            adm, _ = adm_number(h, k, ORD)
            if reg != adm + k:
                return False, f"t={t}, k={k}: reg={reg}, adm={adm}"
            checked += 1
    return True, f"{checked} (t, k) pairs"


def criterion_7():
    pool = [g for g in graphs(4) if g.edges]
    rng = random.Random(7)
    pairs = [(rng.choice(pool), rng.choice(pool)) for _ in range(25)]
    checks = 0
    for a, b in pairs:
        for kind in (ORD, SYM):
            fa, fb = Filtration.of(a, kind), Filtration.of(b, kind)
            for n in range(0, fa.nu + fb.nu + 1):
                rep = verify_mixed_sum_regularity(fa, fb, n)
                if not rep.ok:
                    return False, f"{kind.value} n={n}: {rep.to_json()}"
                checks += 1
    return True, f"25 pairs, {checks} (pair, kind, n) checks"


def criterion_8():
    checks = 0
    for g in graphs(5):
        covers = minimal_vertex_covers(g)
        for k in range(1, cover_number(g) + 1):
            direct = sqf_symbolic_power(g, k)
            oracle = symbolic_power_oracle(covers, g.n, k)
            if direct != oracle:
                return False, f"{g!r} k={k}: {direct!r} vs {oracle!r}"
            checks += 1
    return True, f"{checks} (graph, k) pairs"


def criterion_9():
    rng = random.Random(2024)
    for i in range(200):
        n = rng.randint(1, 7)
        a = SqfIdeal(n, tuple(rng.randrange(1, 1 << n) for _ in range(rng.randint(1, 7))))
        if betti_table(a).ideal_table() != betti_table_koszul(a):
            return False, f"ideal #{i}: {a!r}"
    return True, "200 random ideals"


def criterion_10():
    samples = graphs(5)
    details = []
    for kind in (ORD, SYM):
        report = check_splf_axioms(samples, kind, max_union_vertices=10, induced_subgraphs=True)
        if not report.ok:
            return False, f"{kind.value}: {report.violations[0]}"
        dels = [all(check_del_condition(Filtration.of(g, kind))) for g in samples if g.edges]
        if not all(dels):
            return False, f"{kind.value}: del_star containment fails"
        details.append(f"{kind.value} {report.checked}")
    return True, "; ".join(details)


def criterion_11():
    rng = random.Random(11)
    pool = graphs(5)
    for i in range(100):
        g = rng.choice(pool)
        beta = cover_number(g)
        principal = is_principal_full_support(g, SYM) if g.edges else None

        s = rng.randrange(1 << g.n)
        n = rng.randint(2, 4)
        gamma, _ = build_attach_Kn(g, s, n)
        if cover_number(gamma) != beta + n - 1:
            return False, f"instance {i}: attach K_{n} cover number"
        if principal is not None:
            p_gamma = is_principal_full_support(gamma, SYM)
            if p_gamma and not principal:
                return False, f"instance {i}: attach K_{n} principality does not descend"
            if n >= 3 and principal and not p_gamma:
                return False, f"instance {i}: attach K_{n} converse fails"

        v = rng.randrange(g.n)
        m = rng.randint(1, 3)
        gamma, _, _ = build_whiskered_attach(g, v, m)
        if cover_number(gamma) != beta + m:
            return False, f"instance {i}: whiskered attach cover number"
        if principal is not None and is_principal_full_support(gamma, SYM) != principal:
            return False, f"instance {i}: whiskered attach principality"

        q = rng.randint(2, 5)
        if cover_number(complete_graph(q)) != q - 1 or not is_principal_full_support(complete_graph(q), SYM):
            return False, f"instance {i}: K_{q}"
        if not is_principal_full_support(whisker_complete(q), SYM):
            return False, f"instance {i}: W(K_{q})"
        r = rng.randint(1, q - 1)
        if is_principal_full_support(complete_with_pendants(q, r), SYM):
            return False, f"instance {i}: K_{q} with {r} pendants"
        if g.edges and is_principal_full_support(add_two_pendants(g, rng.randrange(g.n)), SYM):
            return False, f"instance {i}: two pendants on one vertex"
    return True, "100 constructed instances"


CRITERIA = [
    (1, "chordal graphs n<=6: reg = ind + k", criterion_1),
    (2, "block graphs n<=7: reg = ind + k", criterion_2),
    (3, "CM chordal graphs n<=7: reg at k=2 = ind + 2", criterion_3),
    (4, "all graphs n<=5, both kinds: slack >= 0", criterion_4),
    (5, "complete graphs: ind = 1 and reg = k + 1", criterion_5),
    (6, "disjoint edges, ordinary: reg = adm + k", criterion_6),
    (7, "mixed sums: direct reg = max formula", criterion_7),
    (8, "symbolic powers: cover criterion = prime-power oracle", criterion_8),
    (9, "Hochster and Koszul Betti tables agree", criterion_9),
    (10, "power-function axioms and del_star containment", criterion_10),
    (11, "construction cover numbers and principality", criterion_11),
]


def _line(num, name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {num}: {name} ({detail})"


@pytest.mark.parametrize("num,name,check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_acceptance(num, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for num, name, check in CRITERIA:
        ok, detail = check()
        failures += not ok
        print(_line(num, name, ok, detail), flush=True)
    sys.exit(1 if failures else 0)
