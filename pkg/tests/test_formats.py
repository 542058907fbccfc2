from __future__ import annotations

import pytest
from hypothesis import given
import hypothesis.strategies as st

from specfactor.formats import (
    FormatError,
    parse_edge_list,
    parse_graph6,
    write_edge_list,
    write_graph6,
)
from specfactor.graphs import complete, cycle, h_extremal, random_graph

from .strategies import graphs as graphs_st


def test_known_encodings():
    assert write_graph6(complete(1)) == "@"
    assert write_graph6(complete(5)) == "D~{"
    g = parse_graph6("D~{")
    assert g.n == 5 and g.edge_count() == 10
    assert write_graph6(g) == "D~{"


def test_header_accepted():
    g = parse_graph6(">>graph6<<D~{")
    assert g.adj == complete(5).adj


def test_malformed_inputs():
    with pytest.raises(FormatError):
        parse_graph6("garbage\x01")
    with pytest.raises(FormatError):
        parse_graph6("")
    with pytest.raises(FormatError):
        parse_graph6("D~")  # truncated body
    with pytest.raises(FormatError):
        parse_graph6("D~{{")  # trailing garbage
    # C(3,2)=3 triangle bits: set a padding bit below them.
    bad = chr(3 + 63) + chr(0b000001 + 63)
    with pytest.raises(FormatError):
        parse_graph6(bad)


@given(graphs_st(max_n=8))
def test_round_trip_small(g):
    assert parse_graph6(write_graph6(g)).adj == g.adj


@given(st.integers(0, 400))
def test_round_trip_random_orders(seed):
    n = 1 + seed % 62
    g = random_graph(n, p=0.31, seed=seed)
    text = write_graph6(g)
    assert parse_graph6(text).adj == g.adj


def test_long_form_orders():
    for n in (63, 64):
        g = random_graph(n, p=0.2, seed=n, cap=64)
        text = write_graph6(g)
        assert text.startswith("~")
        assert parse_graph6(text).adj == g.adj


def test_edge_list_round_trip():
    g = h_extremal(8, 3)
    assert parse_edge_list(write_edge_list(g)).adj == g.adj
    assert parse_edge_list("3 2\n0 1\n1 2\n").edges() == [(0, 1), (1, 2)]


def test_edge_list_malformed():
    with pytest.raises(FormatError):
        parse_edge_list("")
    with pytest.raises(FormatError):
        parse_edge_list("3 2\n0 1\n")  # count mismatch
    with pytest.raises(FormatError):
        parse_edge_list("2 1\n0 2\n")  # endpoint out of range
    with pytest.raises(FormatError):
        parse_edge_list("x y\n")


def test_cycle_round_trip():
    g = cycle(7)
    assert parse_graph6(write_graph6(g)).adj == g.adj
