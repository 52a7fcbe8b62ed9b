"""The trivial k-approximation and the seed-set combination step."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from hypervc.errors import InputError
from hypervc.hypergraph import (
    Cover,
    Hypergraph,
    _check_vertex_set,
    as_fraction,
    maximal_disjoint_edges,
    uncovered_subhypergraph,
)


@dataclass(frozen=True)
class CombineParams:
    """``delta`` is the assumed fraction |W & C| / |W|; it is reported, never used."""

    j: Optional[int] = None  # defaults to k - 1
    delta: Fraction = Fraction(1)
    exhaustive_check_enabled: bool = False

    def __post_init__(self):
        object.__setattr__(self, "delta", as_fraction(self.delta))
        if not 0 <= self.delta <= 1:
            raise InputError(f"delta must lie in [0, 1], got {self.delta}")
        if self.j is not None and self.j < 0:
            raise InputError("j must be non-negative")

    def depth(self, k: int) -> int:
        j = k - 1 if self.j is None else self.j
        if self.exhaustive_check_enabled and j < k - 1:
            raise InputError(f"exhaustive check needs j >= k - 1 = {k - 1}, got {j}")
        return j


def greedy_matching_cover(H: Hypergraph) -> Cover:
    """All vertices of a greedily built maximal set of disjoint edges.

    At most k times the optimum, since each picked edge needs its own cover vertex.
    """
    return Cover.of(v for e in maximal_disjoint_edges(H) for v in e)


def exhaustive_large_cover_check(H: Hypergraph, j: int) -> Optional[Cover]:
    """Smallest cover among all vertex sets of size ``n - i``, ``k-1 <= i <= j``.

    Costs O(n^j); sizes are tried in increasing order and the first cover in
    lexicographic order is returned.
    """
    if j < H.k - 1:
        raise InputError(f"j must be at least k - 1 = {H.k - 1}, got {j}")
    masks = H.edge_masks
    for i in range(j, H.k - 2, -1):
        size = H.n - i
        if size < 0:
            continue
        for S in combinations(range(H.n), size):
            sm = 0
            for v in S:
                sm |= 1 << v
            if all(e & sm for e in masks):
                return Cover(S)
    return None


def combine_with_seed(H: Hypergraph, W: Iterable[int], params: CombineParams = CombineParams()) -> Cover:
    """``W`` plus a greedy k-approximation of the edges ``W`` leaves uncovered.

    If ``W`` lies inside a minimum cover the result has at most
    ``k*OPT - (k-1)*|W|`` vertices.
    """
    W = _check_vertex_set(H, W)
    rest = greedy_matching_cover(uncovered_subhypergraph(H, W))
    best = Cover.of(W | set(rest.vertices))
    if params.exhaustive_check_enabled:
        alt = exhaustive_large_cover_check(H, params.depth(H.k))
        if alt is not None and alt.size < best.size:
            best = alt
    return best
