from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from specfactor.graphs import (
    GraphError,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    h_extremal,
    l_graph,
    mask_of,
    path,
    petersen,
    star,
)
from specfactor.spectral import (
    ConsistencyError,
    Order,
    compare_radius,
    full_spectrum,
    hong_bound,
    kopr_threshold,
    lemma6_poly_values,
    quotient_lambda1,
    quotient_matrix,
    spectral_radius,
    theorem_n_bound,
)

from .strategies import connected_graphs, graphs as graphs_st


def _numpy_rho(g) -> float:
    a = np.zeros((g.n, g.n))
    for v in range(g.n):
        for u in range(g.n):
            a[v, u] = g.adj[v] >> u & 1
    return float(np.linalg.eigvalsh(a)[-1])


def test_radius_closed_forms():
    assert abs(spectral_radius(complete(7)).midpoint - 6) < 1e-10
    assert spectral_radius(cycle(6)).width < 1e-10
    assert abs(spectral_radius(cycle(6)).midpoint - 2) < 1e-10
    enc = spectral_radius(path(3))
    assert abs(enc.midpoint - math.sqrt(2)) < 1e-9
    enc = spectral_radius(h_extremal(8, 1))
    assert abs(enc.midpoint - 6) < 1e-10  # component maximum
    enc = spectral_radius(complete_bipartite(3, 5))
    assert abs(enc.midpoint - math.sqrt(15)) < 1e-9


def test_radius_errors_and_width():
    with pytest.raises(GraphError):
        spectral_radius(complete(0))
    enc = spectral_radius(petersen(), tol=1e-12)
    assert enc.lo <= 3.0 <= enc.hi
    assert enc.width <= 1e-12
    assert enc.method == "power-iteration"


@given(connected_graphs(max_n=8))
def test_enclosure_contains_true_radius(g):
    enc = spectral_radius(g)
    rho = _numpy_rho(g)
    assert enc.lo - 1e-8 <= rho <= enc.hi + 1e-8
    assert enc.width <= 1e-8


@given(graphs_st(min_n=1, max_n=8))
def test_enclosure_disconnected_max(g):
    enc = spectral_radius(g)
    assert abs(enc.midpoint - _numpy_rho(g)) <= 1e-8


def test_full_spectrum_known():
    assert np.allclose(full_spectrum(complete(4)).values, [3, -1, -1, -1], atol=1e-8)
    assert np.allclose(full_spectrum(cycle(4)).values, [2, 0, 0, -2], atol=1e-8)
    vals = full_spectrum(petersen()).values
    expected = [3.0] + [1.0] * 5 + [-2.0] * 4
    assert np.allclose(vals, expected, atol=1e-8)
    assert vals[2] == pytest.approx(1.0, abs=1e-9)  # lambda_3


@given(graphs_st(min_n=1, max_n=8))
def test_spectrum_matches_numpy(g):
    vals = full_spectrum(g).values
    a = np.zeros((g.n, g.n))
    for v in range(g.n):
        for u in range(g.n):
            a[v, u] = g.adj[v] >> u & 1
    assert np.allclose(vals, sorted(np.linalg.eigvalsh(a), reverse=True), atol=1e-7)
    assert abs(sum(vals)) <= g.n * 1e-7


def test_hong_bound():
    assert hong_bound(complete(5)) == pytest.approx(4.0)
    assert hong_bound(star(4)) == pytest.approx(2.0)
    assert hong_bound(cycle(5)) == pytest.approx(math.sqrt(6))
    with pytest.raises(GraphError):
        hong_bound(disjoint_union(complete(2), complete(2)))


@given(connected_graphs(max_n=8))
def test_hong_bound_dominates(g):
    assert spectral_radius(g).hi <= hong_bound(g) + 1e-9


def test_quotient_trivial():
    q = quotient_matrix(complete(4), (1, mask_of([1, 2, 3])))
    assert q.equitable
    assert q.as_int_rows() == [[0, 3], [1, 2]]
    assert quotient_lambda1(q) == pytest.approx(3.0, abs=1e-9)


def test_quotient_h_family():
    n, a = 9, 3
    g = h_extremal(n, a)
    classes = (mask_of(range(a - 1)), 1 << (a - 1), mask_of(range(a, n)))
    q = quotient_matrix(g, classes)
    assert q.equitable
    assert q.as_int_rows() == [
        [a - 2, 1, n - a],
        [a - 1, 0, 0],
        [a - 1, 0, n - a - 1],
    ]
    lam = quotient_lambda1(q, tol=1e-11)
    enc = spectral_radius(g, tol=1e-11)
    assert abs(lam - enc.midpoint) <= 1e-9


def test_quotient_l_family():
    n, s = 13, 3
    g = l_graph(n, s)
    classes = (mask_of(range(s)), mask_of(range(n - 3, n)), mask_of(range(s, n - 3)))
    q = quotient_matrix(g, classes)
    assert q.equitable
    assert q.as_int_rows() == [[s - 1, 3, n - s - 3], [s, 0, 0], [s, 0, n - s - 4]]
    assert quotient_lambda1(q) < n - 2


def test_quotient_not_equitable():
    q = quotient_matrix(path(3), (mask_of([0, 1]), 1 << 2))
    assert not q.equitable
    with pytest.raises(ConsistencyError):
        q.as_int_rows()


def test_quotient_partition_validation():
    with pytest.raises(GraphError):
        quotient_matrix(complete(3), (0b11, 0b110))  # overlap
    with pytest.raises(GraphError):
        quotient_matrix(complete(3), (0b11,))  # not covering


def test_lemma6_values():
    assert lemma6_poly_values(13, 3) == (219, -27)
    # n = 4s+1 boundary: f(n-2) collapses to 29s^2 - 14s
    for s in range(1, 6):
        n = 4 * s + 1
        f2, f4 = lemma6_poly_values(n, s)
        assert f2 == 29 * s * s - 14 * s
        assert f4 == -3 * s * s
        assert f2 > 0
    with pytest.raises(GraphError):
        lemma6_poly_values(12, 3)


def test_kopr_threshold_cases():
    assert kopr_threshold(3, 1) == pytest.approx(math.sqrt(32) / 2, abs=1e-12)
    assert kopr_threshold(4, 1) == pytest.approx((2 + math.sqrt(36 - 8)) / 2, abs=1e-12)
    assert kopr_threshold(5, 3) == pytest.approx((2 + math.sqrt(64 - 4)) / 2, abs=1e-12)
    # both even: (6-2+sqrt(64-0))/2 = 6 exactly
    assert kopr_threshold(6, 5) == pytest.approx(6.0, abs=1e-12)
    # k even, ceil odd: ceil(8/3) = 3
    assert kopr_threshold(8, 3) == pytest.approx((6 + math.sqrt(100 - 8)) / 2, abs=1e-12)
    with pytest.raises(GraphError):
        kopr_threshold(2, 1)
    with pytest.raises(GraphError):
        kopr_threshold(5, 2)


def test_theorem_n_bound():
    assert theorem_n_bound(1, 1) == 8
    assert theorem_n_bound(1, 3) == 8
    assert theorem_n_bound(2, 4) == 18
    with pytest.raises(GraphError):
        theorem_n_bound(3, 2)


def test_compare_radius_methods():
    res = compare_radius(complete(5), complete(4))
    assert res.order is Order.GREATER and res.method == "float"
    res = compare_radius(cycle(5), cycle(5))
    assert res.order is Order.EQUAL and res.method == "exact"
    res = compare_radius(cycle(6), disjoint_union(complete(3), complete(3)))
    assert res.order is Order.EQUAL and res.method == "exact"


@settings(max_examples=30)
@given(connected_graphs(min_n=2, max_n=7), st.integers(0, 20))
def test_edge_addition_strictly_raises_radius(g, pick):
    non_edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if not g.adj[u] >> v & 1
    ]
    if not non_edges:
        return
    u, v = non_edges[pick % len(non_edges)]
    rows = list(g.adj)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    from specfactor.graphs import Graph

    bigger = Graph(g.n, tuple(rows))
    res = compare_radius(bigger, g)
    assert res.order is Order.GREATER
