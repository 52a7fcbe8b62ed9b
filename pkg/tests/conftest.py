from itertools import combinations

import pytest
from hypothesis import strategies as st

from hypervc.hypergraph import Hypergraph


def brute_force_min_covers(H):
    """All minimum covers by scanning subsets in increasing size (independent oracle)."""
    edges = [set(e) for e in H.edges]
    for size in range(H.n + 1):
        found = [S for S in combinations(range(H.n), size)
                 if all(not e.isdisjoint(S) for e in edges)]
        if found:
            return size, found
    raise AssertionError("V is always a cover")


@st.composite
def hypergraphs(draw, max_n=9, max_k=4, min_edges=0):
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(max(k, 1), max(max_n, k)))
    all_edges = list(combinations(range(n), k))
    edges = draw(st.lists(st.sampled_from(all_edges), unique=True,
                          min_size=min(min_edges, len(all_edges)), max_size=min(len(all_edges), 40)))
    return Hypergraph(n, k, edges)


@pytest.fixture
def triangle():
    return Hypergraph(3, 2, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def single_edge():
    return Hypergraph(4, 3, [(0, 1, 2)])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        ok, detail = results[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
