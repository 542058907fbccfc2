from __future__ import annotations

from itertools import combinations

from hypothesis import given, settings
import hypothesis.strategies as st

from specfactor.graphs import complete, cycle, from_edges, petersen, random_graph, star
from specfactor.matching import is_perfect_matching, max_matching

from .strategies import graphs as graphs_st


def brute_max_matching_size(g) -> int:
    """Independent oracle: try all edge subsets of each size, largest first."""
    edges = g.edges()
    for size in range(g.n // 2, -1, -1):
        if size > len(edges):
            continue
        for subset in combinations(edges, size):
            used = 0
            ok = True
            for u, v in subset:
                m = (1 << u) | (1 << v)
                if used & m:
                    ok = False
                    break
                used |= m
            if ok:
                return size
    return 0


def _assert_valid_matching(g, m):
    used = 0
    for u, v in m:
        assert u < v and g.adj[u] >> v & 1
        bits = (1 << u) | (1 << v)
        assert used & bits == 0
        used |= bits


def test_small_known():
    assert len(max_matching(cycle(6))) == 3
    assert len(max_matching(star(3))) == 1
    assert len(max_matching(complete(4))) == 2
    assert len(max_matching(cycle(5))) == 2


def test_petersen_perfect():
    m = max_matching(petersen())
    assert len(m) == 5
    assert is_perfect_matching(petersen(), m)
    _assert_valid_matching(petersen(), m)


def test_blossom_structures():
    # two triangles joined by a bridge: forces blossom handling
    g = from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
    m = max_matching(g)
    _assert_valid_matching(g, m)
    assert len(m) == 3


def test_deterministic():
    g = random_graph(9, p=0.4, seed=11)
    assert max_matching(g) == max_matching(g)


@given(graphs_st(max_n=7))
def test_matches_brute_force(g):
    m = max_matching(g)
    _assert_valid_matching(g, m)
    assert len(m) == brute_max_matching_size(g)


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_matches_brute_force_seeded(seed):
    g = random_graph(7, p=0.5, seed=seed)
    assert len(max_matching(g)) == brute_max_matching_size(g)
