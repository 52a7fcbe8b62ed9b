import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypervc.errors import GenerationError, InputError
from hypervc.exact import exact_min_cover
from hypervc.generators import (
    GenSpec,
    circulant_regular,
    circulant_subdense,
    clique_gadget,
    complete,
    copies_gadget,
    generate,
    planted,
    random_dense,
    subdense_threshold,
)
from hypervc.hypergraph import Hypergraph, density_report, is_cover
from hypervc.io import write_instance


def test_complete_examples():
    assert complete(4, 2).m == 6
    H = complete(5, 3)
    assert H.m == 10 and set(H.degrees) == {6}
    assert complete(3, 3).m == 1


def test_random_dense_examples():
    assert random_dense(6, 3, 1, 5) == complete(6, 3)
    assert random_dense(10, 3, "0.5", 0).m == 60
    assert random_dense(10, 3, "0.5", 9) == random_dense(10, 3, "0.5", 9)
    assert random_dense(10, 3, "0.5", 1) != random_dense(10, 3, "0.5", 2)
    with pytest.raises(InputError):
        random_dense(5, 2, 0, 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 12), st.integers(1, 3), st.fractions(Fraction(1, 100), 1), st.integers(0, 10**6))
def test_random_dense_is_dense(n, k, eps, seed):
    H = random_dense(n, k, eps, seed)
    assert H.m == math.ceil(eps * math.comb(n, k))
    assert density_report(H, 0).epsilon_star >= eps
    Hypergraph(H.n, H.k, H.edges)  # passes full validation


def test_fano_plane():
    H, info = circulant_regular(7, 3, 0, blocks=[(0, 1, 3)])
    assert H.m == 7 and set(H.degrees) == {3} and info.degree == 3


@settings(max_examples=30, deadline=None)
@given(st.integers(5, 13), st.integers(2, 4), st.integers(1, 3), st.integers(0, 10**6))
def test_circulant_is_regular(n, k, r, seed):
    try:
        H, info = circulant_regular(n, k, r, seed)
    except GenerationError:
        return
    assert H.max_degree == H.avg_degree == info.degree


def test_circulant_symmetric_block_degree():
    # {0,2,4} mod 6 has orbit size 2
    H, info = circulant_regular(6, 3, 0, blocks=[(0, 2, 4)])
    assert H.m == 2 and info.degree == 1


def test_circulant_rejects_too_many_blocks():
    with pytest.raises(GenerationError):
        circulant_regular(5, 2, 10, 0)
    with pytest.raises(GenerationError):
        circulant_regular(7, 3, 0, blocks=[(0, 1, 3), (1, 2, 4)])


def test_circulant_subdense_n30():
    H, info = circulant_subdense(30, 3, 0)
    assert info.degree >= subdense_threshold(30, 3)
    assert density_report(H, 0).subdense_score >= 1


def test_planted_examples():
    H, P = planted(8, 3, 8, "0.5", 3)
    assert H == random_dense(8, 3, "0.5", 3)
    H, P = planted(9, 3, 1, "0.2", 0)
    assert all(0 in e for e in H.edges)
    assert exact_min_cover(H).optimum_size == 1
    for seed in range(10):
        H, P = planted(12, 3, 3, "0.3", seed)
        assert exact_min_cover(H).optimum_size <= 3
        assert is_cover(H, P.vertices)
    with pytest.raises(InputError):
        planted(6, 2, 1, "0.9", 0)


def test_clique_gadget():
    for seed in range(3):
        base = random_dense(12, 3, "0.3", seed)
        for ell in (0, 1, 2):
            H, added = clique_gadget(base, ell, "0.5")
            assert added > 0
            assert set(base.edges) <= set(H.edges)
            assert density_report(H, ell).epsilon_star >= Fraction(1, 2) - Fraction(15, 100)
    base = random_dense(6, 3, "0.5", 0)
    H, added = clique_gadget(base, 0, "0.001")
    assert added == 0 and H == base


def test_copies_gadget_counts():
    base = random_dense(6, 3, "0.5", 0)
    H, info = copies_gadget(base, "0.5")
    assert info.copies == 5 and info.cliques == 1 and info.clique_size == 9
    assert H.n == 5 * 6 + 9
    clique = complete(9, 3)
    opt = exact_min_cover(clique).optimum_size
    assert opt == 9 - 3 + 1 and opt >= 6
    with pytest.raises(InputError):
        copies_gadget(base, 3)


def test_generate_is_byte_deterministic():
    specs = [
        GenSpec("random-dense", 9, 3, 4, {"epsilon": "0.4"}),
        GenSpec("circulant-regular", 11, 3, 2, {"r": 3}),
        GenSpec("planted", 10, 3, 1, {"q": 3, "epsilon": "0.3"}),
        GenSpec("clique-gadget", 6, 3, 1, {"ell": 1, "epsilon": "0.5"}),
        GenSpec("copies-gadget", 5, 3, 1, {"epsilon": "0.5"}),
        GenSpec("complete", 5, 2),
    ]
    for spec in specs:
        assert write_instance(generate(spec).hypergraph) == write_instance(generate(spec).hypergraph)
    with pytest.raises(InputError):
        generate(GenSpec("nope", 5, 2))
    with pytest.raises(InputError):
        GenSpec.from_dict({"model": "complete", "n": 4})
