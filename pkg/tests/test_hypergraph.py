from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypervc.errors import InputError
from hypervc.generators import complete
from hypervc.hypergraph import (
    Hypergraph,
    as_fraction,
    degree,
    density_report,
    is_cover,
    link,
    link_of_set,
    remove_vertices,
    set_degree,
    uncovered_subhypergraph,
    unrank_combination,
)

from conftest import hypergraphs


def test_constructor_rejects_bad_edges():
    with pytest.raises(InputError):
        Hypergraph(3, 2, [(0, 1, 2)])
    with pytest.raises(InputError):
        Hypergraph(3, 2, [(0, 3)])
    with pytest.raises(InputError):
        Hypergraph(3, 2, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        Hypergraph(3, 2, [(1, 1)])
    with pytest.raises(InputError):
        Hypergraph(2, 3)


def test_edges_are_canonical():
    H = Hypergraph(4, 2, [(3, 2), (1, 0)])
    assert H.edges == ((0, 1), (2, 3))
    assert (2, 3) in H and (3, 2) in H and (0, 2) not in H
    assert H == Hypergraph(4, 2, [(0, 1), (2, 3)])


def test_degree_examples(single_edge):
    assert degree(complete(4, 2), 0) == 3
    assert degree(single_edge, 0) == 1
    assert degree(single_edge, 3) == 0
    with pytest.raises(InputError):
        degree(single_edge, 4)


def test_set_degree_examples(single_edge):
    assert set_degree(complete(4, 3), {0, 1}) == 2
    assert set_degree(complete(5, 3), set()) == 10
    assert set_degree(single_edge, {0, 3}) == 0
    with pytest.raises(InputError):
        set_degree(single_edge, {0, 1, 2, 3})


def test_density_report_examples():
    assert density_report(complete(6, 3), 1).epsilon_star == 1
    H = Hypergraph(3, 2, [(0, 1)])
    assert density_report(H, 0).epsilon_star == Fraction(1, 3)
    r = density_report(H, 1)
    assert r.epsilon_star == 0
    assert r.witness == (2,)
    with pytest.raises(InputError):
        density_report(H, 2)


def test_density_report_fields():
    r = density_report(complete(5, 3), 0)
    assert r.avg_degree == 6 and r.max_degree == 6 and r.is_regular
    H = Hypergraph(4, 2, [(0, 1), (0, 2)])
    r = density_report(H, 1)
    assert not r.is_regular and r.avg_degree == 1 and r.max_degree == 2


def test_is_cover_examples(triangle):
    assert is_cover(triangle, {0, 1})
    assert not is_cover(triangle, {0})
    assert is_cover(triangle, range(3))
    with pytest.raises(InputError):
        is_cover(triangle, {5})


def test_uncovered_examples(triangle):
    assert uncovered_subhypergraph(triangle, {0}).edges == ((1, 2),)
    assert uncovered_subhypergraph(triangle, set()) == triangle
    assert uncovered_subhypergraph(triangle, {0, 1, 2}).m == 0


def test_link_examples(single_edge):
    G, mapping = link(complete(4, 3), 0)
    assert G == complete(3, 2) and mapping == (1, 2, 3)
    G, mapping = link(single_edge, 0)
    assert G.n == 3 and G.k == 2
    assert [tuple(mapping[v] for v in e) for e in G.edges] == [(1, 2)]
    G, _ = link(single_edge, 3)
    assert G.n == 3 and G.m == 0
    with pytest.raises(InputError):
        link(Hypergraph(3, 1, [(0,)]), 0)


def test_link_keeps_only_edges_through_vertex():
    H = Hypergraph(5, 3, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 4)])
    G, mapping = link(H, 0)
    assert G.m == 3
    assert {tuple(mapping[v] for v in e) for e in G.edges} == {(1, 2), (1, 3), (2, 3)}


def test_link_of_set_examples():
    G, _ = link_of_set(complete(5, 3), {0, 1})
    assert G == complete(3, 1)
    G, _ = link_of_set(complete(5, 3), {0})
    assert G == complete(4, 2)
    G, mapping = link_of_set(Hypergraph(4, 3, [(0, 1, 2), (0, 1, 3)]), {0, 1})
    assert [tuple(mapping[v] for v in e) for e in G.edges] == [(2,), (3,)]
    with pytest.raises(InputError):
        link_of_set(complete(5, 3), {0, 1, 2})


def test_remove_vertices():
    H = complete(5, 3)
    G, mapping = remove_vertices(H, {1, 3})
    assert mapping == (0, 2, 4) and G == complete(3, 3)
    G, mapping = remove_vertices(H, {0, 1, 2})
    assert G is None and mapping == (3, 4)


def test_unrank_matches_itertools():
    for n, k in [(6, 3), (7, 1), (5, 5), (8, 2)]:
        assert [unrank_combination(r, n, k) for r in range(len(list(combinations(range(n), k))))] \
            == list(combinations(range(n), k))


def test_as_fraction():
    assert as_fraction(0.1) == Fraction(1, 10)
    assert as_fraction("2/3") == Fraction(2, 3)
    assert as_fraction(1) == 1
    with pytest.raises(InputError):
        as_fraction("abc")


@given(hypergraphs())
def test_handshake(H):
    assert sum(degree(H, v) for v in range(H.n)) == H.k * H.m


@given(hypergraphs())
def test_zero_wise_density_is_edge_fraction(H):
    from math import comb
    assert density_report(H, 0).epsilon_star * comb(H.n, H.k) == H.m


@given(hypergraphs(), st.data())
def test_uncovered_empty_iff_cover(H, data):
    W = data.draw(st.sets(st.integers(0, H.n - 1)))
    assert (uncovered_subhypergraph(H, W).m == 0) == is_cover(H, W)


@given(hypergraphs(), st.data())
def test_link_edge_count_equals_degree(H, data):
    if H.k < 2:
        return
    v = data.draw(st.integers(0, H.n - 1))
    G, _ = link(H, v)
    # simple hypergraphs never collapse: distinct edges through v stay distinct
    assert G.m == degree(H, v)


@given(hypergraphs(min_edges=1), st.data())
def test_link_of_set_cover_lifts(H, data):
    if H.k < 2:
        return
    ell = data.draw(st.integers(1, H.k - 1))
    S = data.draw(st.sets(st.integers(0, H.n - 1), min_size=ell, max_size=ell))
    G, mapping = link_of_set(H, S)
    C = data.draw(st.sets(st.integers(0, G.n - 1)))
    if is_cover(G, C):
        lifted = {mapping[v] for v in C} | set(S)
        assert all(not lifted.isdisjoint(e) for e in H.edges if set(S) <= set(e))


@given(hypergraphs(max_n=7))
def test_density_report_matches_definition(H):
    from math import comb
    for ell in range(H.k):
        expect = min(
            Fraction(set_degree(H, S), comb(H.n - ell, H.k - ell))
            for S in combinations(range(H.n), ell)
        )
        assert density_report(H, ell).epsilon_star == expect
