from __future__ import annotations

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from specfactor.factors import (
    CapacityError,
    FactorSpec,
    GadgetInfeasible,
    GeneralFactorSpec,
    build_gadget,
    decide_enum,
    decide_lovasz,
    decide_matching,
    eta_general,
    eta_parity,
    liu_lu_check,
    q_count,
    validate_factor,
)
from specfactor.graphs import (
    Graph,
    GraphError,
    complete,
    cycle,
    disjoint_union,
    h_extremal,
    petersen,
    random_graph,
    star,
)

SPECS = [FactorSpec(1, 1), FactorSpec(1, 3), FactorSpec(2, 2), FactorSpec(2, 4), FactorSpec(3, 3)]


def test_factor_spec_validation():
    with pytest.raises(GraphError):
        FactorSpec(2, 3)
    with pytest.raises(GraphError):
        FactorSpec(0, 2)
    with pytest.raises(GraphError):
        FactorSpec(3, 1)


def test_q_count_examples():
    h = h_extremal(8, 1)
    assert q_count(h, 0, 1 << 0, 1) == 1  # solo vertex as T
    assert q_count(cycle(5), 0, 0, 1) == 1
    assert q_count(complete(4), 0, 0, 1) == 0
    with pytest.raises(GraphError):
        q_count(complete(3), 0b1, 0b1, 1)


def test_eta_parity_examples():
    # the extremal certificate value is exactly -2 for every valid pair
    for a, b, n in [(1, 1, 8), (1, 3, 8), (2, 2, 7), (2, 4, 9), (3, 3, 10)]:
        h = h_extremal(n, a)
        solo = a - 1
        assert eta_parity(h, 0, 1 << solo, FactorSpec(a, b)) == -2, (a, b, n)
    k4 = complete(4)
    assert eta_parity(k4, 0, k4.full_mask, FactorSpec(1, 1)) == 8
    g = cycle(5)
    assert eta_parity(g, 0, 0, FactorSpec(1, 1)) == -q_count(g, 0, 0, 1)


def test_eta_general_matches_uniform():
    rng_specs = [(1, 1), (1, 3), (2, 2), (3, 3)]
    for i in range(200):
        g = random_graph(7, p=0.5, seed=1000 + i)
        a, b = rng_specs[i % len(rng_specs)]
        gspec = GeneralFactorSpec.uniform(FactorSpec(a, b), g.n)
        s_mask = (i * 2654435761) % 128 & g.full_mask
        t_mask = ((i * 40503) % 128) & g.full_mask & ~s_mask
        assert eta_general(g, s_mask, t_mask, gspec) == eta_parity(g, s_mask, t_mask, FactorSpec(a, b))


def test_eta_general_non_parity():
    # g < f everywhere: no all-equal component, so the count term vanishes
    g = cycle(5)
    gspec = GeneralFactorSpec((1,) * 5, (2,) * 5, parity=False)
    assert eta_general(g, 0, 0, gspec) == 0
    # g == f == 1 on K2: the single component has even f-total, count 0
    k2 = complete(2)
    gspec = GeneralFactorSpec((1, 1), (1, 1), parity=False)
    assert eta_general(k2, 0, 0, gspec) == 0
    # odd f-total component does get counted
    k1 = complete(1)
    gspec = GeneralFactorSpec((1,), (1,), parity=False)
    assert eta_general(k1, 0, 0, gspec) == -1


def test_decide_lovasz_examples():
    res = decide_lovasz(cycle(5), FactorSpec(1, 1))
    assert not res.exists
    assert res.certificate.s_mask == 0 and res.certificate.t_mask == 0
    assert res.certificate.eta == -1
    assert not decide_lovasz(h_extremal(8, 1), FactorSpec(1, 3)).exists
    assert decide_lovasz(complete(4), FactorSpec(1, 1)).exists
    with pytest.raises(CapacityError):
        decide_lovasz(complete(15), FactorSpec(1, 1), cap=14)


def test_decide_lovasz_certificate_recomputes():
    for seed in range(60):
        g = random_graph(7, p=0.35, seed=seed)
        for spec in SPECS:
            res = decide_lovasz(g, spec)
            if not res.exists:
                cert = res.certificate
                assert cert.s_mask & cert.t_mask == 0
                assert eta_parity(g, cert.s_mask, cert.t_mask, spec) == cert.eta
                assert cert.eta <= -1


def test_gadget_counts():
    gm = build_gadget(complete(4), FactorSpec(1, 1))
    assert gm.graph.n == 20  # per vertex 3 edge-nodes + 2 forced cores
    assert len(gm.cross_edges) == 6
    gm = build_gadget(star(3), FactorSpec(1, 3))
    # center: 3 edge-nodes + 2 flexible; leaves: 1 edge-node each
    assert gm.graph.n == 5 + 3
    with pytest.raises(GadgetInfeasible):
        build_gadget(star(3), FactorSpec(2, 2))  # leaves have degree 1 < 2


@given(st.integers(0, 500))
def test_gadget_parity(seed):
    g = random_graph(6, p=0.6, seed=seed)
    spec = FactorSpec(1, 3) if seed % 2 else FactorSpec(2, 2)
    if g.n and min(r.bit_count() for r in g.adj) >= spec.a:
        gm = build_gadget(g, spec)
        expect = sum(2 * r.bit_count() - spec.a for r in g.adj)
        assert gm.graph.n == expect
        if (g.n * spec.a) % 2 == 0:
            assert gm.graph.n % 2 == 0


def test_decide_matching_examples():
    assert not decide_matching(h_extremal(8, 1), FactorSpec(1, 1)).exists
    res = decide_matching(complete(4), FactorSpec(2, 2))
    assert res.exists
    assert all(sum(1 for e in res.factor if v in e) == 2 for v in range(4))
    assert decide_matching(petersen(), FactorSpec(1, 3)).exists
    assert decide_matching(complete(0), FactorSpec(1, 1)).exists


def test_decide_enum_examples():
    res = decide_enum(cycle(4), FactorSpec(1, 1))
    assert res.exists and sorted(res.factor) == [(0, 3), (1, 2)]  # first in edge order
    res = decide_enum(star(3), FactorSpec(1, 3))
    assert res.exists and sorted(res.factor) == [(0, 1), (0, 2), (0, 3)]
    assert not decide_enum(cycle(5), FactorSpec(1, 1)).exists
    with pytest.raises(CapacityError):
        decide_enum(complete(8), FactorSpec(1, 1))  # 28 edges > cap


def test_validate_factor():
    c6 = cycle(6)
    pm = frozenset([(0, 1), (2, 3), (4, 5)])
    assert validate_factor(c6, pm, FactorSpec(1, 1))
    assert not validate_factor(c6, frozenset(), FactorSpec(1, 1))
    assert validate_factor(cycle(4), frozenset(cycle(4).edges()), FactorSpec(2, 2))
    assert not validate_factor(c6, frozenset([(0, 2)]), FactorSpec(1, 1))  # non-edge


def test_three_way_agreement_seeded():
    for seed in range(150):
        n = 4 + seed % 4
        g = random_graph(n, p=0.5, seed=seed * 31 + 7)
        for spec in SPECS:
            r_match = decide_matching(g, spec)
            r_enum = decide_enum(g, spec)
            r_lov = decide_lovasz(g, spec)
            assert r_match.exists == r_enum.exists == r_lov.exists, (seed, spec)
            if r_match.exists:
                assert validate_factor(g, r_match.factor, spec)
                assert validate_factor(g, r_enum.factor, spec)


def test_factor_containment_monotonicity():
    # a graph containing a factor-bearing spanning subgraph has a factor
    base = cycle(8)
    spec = FactorSpec(2, 2)
    assert decide_matching(base, spec).exists
    rows = list(base.adj)
    for u, v in [(0, 4), (1, 5), (2, 6)]:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        g = Graph(8, tuple(rows))
        assert decide_matching(g, spec).exists


def test_liu_lu_examples():
    assert liu_lu_check(complete(12), FactorSpec(1, 1))
    assert not liu_lu_check(disjoint_union(complete(6), complete(6)), FactorSpec(1, 1))
    assert not liu_lu_check(cycle(12), FactorSpec(1, 1))  # max degree 2 < 12/2
    assert not liu_lu_check(complete(5), FactorSpec(1, 1))  # below order floor (and odd na)


@settings(max_examples=60)
@given(st.integers(0, 10_000))
def test_liu_lu_implies_factor(seed):
    g = random_graph(8, p=0.85, seed=seed)
    spec = FactorSpec(1, 1)
    if liu_lu_check(g, spec):
        assert decide_matching(g, spec).exists


def test_result_json_shapes():
    res = decide_lovasz(cycle(5), FactorSpec(1, 1))
    js = res.to_json()
    assert js["decision"] == "no" and js["certificate"]["eta"] == -1
    res = decide_enum(cycle(4), FactorSpec(1, 1))
    js = res.to_json()
    assert js["decision"] == "yes" and js["factor_edges"] == [[0, 3], [1, 2]]
