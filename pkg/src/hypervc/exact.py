"""Exact minimum vertex cover and enumeration of all minimum covers.

Two exact searches share one result type:

* ``"edges"``: branch-and-bound on the smallest uncovered edge.  Branch ``i``
  puts the ``i``-th allowed vertex of the edge into the cover and forbids the
  earlier ones, so every cover is reached at most once.  Nodes are pruned with
  the greedy disjoint-edge bound on the residual edges.
* ``"independent"``: searches maximum independent sets (complements of minimum
  covers) by extending sets in ascending vertex order.  Cheap exactly when the
  optimum is large, i.e. on dense instances where edge branching is hopeless.

``"auto"`` picks edge branching when the greedy cover is at most ``n/2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from hypervc.errors import BudgetExceeded, InputError
from hypervc.hypergraph import Cover, Hypergraph, cover_from_mask, maximal_disjoint_edges

DEFAULT_NODE_BUDGET = 10**7
STRATEGIES = ("auto", "edges", "independent")


@dataclass
class ExactResult:
    optimum: Cover
    optimum_size: int
    nodes_explored: int
    all_min_covers: Optional[List[Cover]] = None
    strategy: str = "edges"


def matching_lower_bound(H: Hypergraph) -> int:
    """Size of the greedy maximal set of pairwise-disjoint edges."""
    return len(maximal_disjoint_edges(H))


def _greedy_bound(masks) -> int:
    used = 0
    count = 0
    for e in masks:
        if not used & e:
            used |= e
            count += 1
    return count


def _pick_strategy(H: Hypergraph, strategy: str) -> str:
    if strategy not in STRATEGIES:
        raise InputError(f"unknown strategy {strategy!r}")
    if strategy != "auto":
        return strategy
    return "edges" if H.k * matching_lower_bound(H) * 2 <= H.n else "independent"


class _Counter:
    def __init__(self, budget):
        self.budget = budget
        self.nodes = 0

    def tick(self, incumbent):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(
                f"node budget {self.budget} exceeded",
                incumbent=Cover(cover_from_mask(incumbent)) if incumbent is not None else None,
                nodes_explored=self.nodes - 1,
            )


def _edge_search(H: Hypergraph, counter: _Counter, enumerate_all: bool, bound: Optional[int]):
    masks = H.edge_masks
    if bound is None:
        upper = 0
        for e in masks:
            if not upper & e:
                upper |= e
        best = [bin(upper).count("1"), upper]
    else:
        best = [bound + 1, None]
    found = []

    def rec(chosen, size, forbidden, edges):
        counter.tick(best[1])
        # edges: residual edges restricted to allowed vertices, in canonical order
        if not edges:
            if enumerate_all:
                found.append(chosen)
            elif size < best[0]:
                best[0], best[1] = size, chosen
            return
        lb = _greedy_bound(edges)
        if enumerate_all:
            if size + lb > bound:
                return
        elif size + lb >= best[0]:
            return
        first = edges[0]
        earlier = 0
        e = first
        while e:
            low = e & -e
            e ^= low
            new_forbidden = forbidden | earlier
            nxt = []
            dead = False
            for f in edges[1:]:
                if f & low:
                    continue
                g = f & ~new_forbidden
                if not g:
                    dead = True
                    break
                nxt.append(g)
            if not dead:
                rec(chosen | low, size + 1, new_forbidden, nxt)
            earlier |= low

    rec(0, 0, 0, list(masks))
    if enumerate_all:
        return found
    return best[1]


def _independent_search(H: Hypergraph, counter: _Counter, enumerate_all: bool, target: Optional[int]):
    """Maximum independent sets by ascending extension.

    ``target`` (enumeration mode) is the known independence number; every
    independent set of exactly that size is returned.
    """
    n = H.n
    full = (1 << n) - 1
    # rests[v]: masks of e - {v} for the edges e containing v
    rests = [[] for _ in range(n)]
    loops = 0  # vertices forming a one-element edge can never be independent
    for e in H.edge_masks:
        if not e & (e - 1):
            loops |= e
            continue
        x = e
        while x:
            low = x & -x
            x ^= low
            rests[low.bit_length() - 1].append(e ^ low)

    best = [-1, 0]
    if not enumerate_all:
        # greedy cover gives an initial independent set
        upper = 0
        for e in H.edge_masks:
            if not upper & e:
                upper |= e
        best = [n - bin(upper).count("1"), full & ~upper]
    found = []

    def rec(indep, size, candidates):
        counter.tick(None if enumerate_all else full & ~best[1])
        if enumerate_all:
            if size == target:
                found.append(indep)
                return
            if size + bin(candidates).count("1") < target:
                return
        else:
            if size > best[0]:
                best[0], best[1] = size, indep
            if size + bin(candidates).count("1") <= best[0]:
                return
        c = candidates
        while c:
            low = c & -c
            c ^= low
            v = low.bit_length() - 1
            new_indep = indep | low
            # vertices that would now complete an edge inside the set
            blocked = 0
            for r in rests[v]:
                missing = r & ~new_indep
                if missing and not missing & (missing - 1):
                    blocked |= missing
            rec(new_indep, size + 1, c & ~blocked)

    rec(0, 0, full & ~loops)
    if enumerate_all:
        return found
    return full & ~best[1]


def exact_min_cover(H: Hypergraph, node_budget: int = DEFAULT_NODE_BUDGET,
                    strategy: str = "auto") -> ExactResult:
    strategy = _pick_strategy(H, strategy)
    counter = _Counter(node_budget)
    if strategy == "edges":
        mask = _edge_search(H, counter, False, None)
    else:
        mask = _independent_search(H, counter, False, None)
    cover = Cover(cover_from_mask(mask))
    return ExactResult(cover, cover.size, counter.nodes, strategy=strategy)


def enumerate_min_covers(H: Hypergraph, node_budget: int = DEFAULT_NODE_BUDGET,
                         strategy: str = "auto") -> ExactResult:
    """All minimum covers, sorted lexicographically."""
    first = exact_min_cover(H, node_budget, strategy)
    counter = _Counter(node_budget - first.nodes_explored)
    try:
        if first.strategy == "edges":
            masks = _edge_search(H, counter, True, first.optimum_size)
        else:
            full = (1 << H.n) - 1
            masks = [full & ~m for m in
                     _independent_search(H, counter, True, H.n - first.optimum_size)]
    except BudgetExceeded as exc:
        exc.incumbent = first.optimum
        exc.nodes_explored += first.nodes_explored
        raise
    covers = sorted((Cover(cover_from_mask(m)) for m in masks), key=lambda c: c.vertices)
    return ExactResult(first.optimum, first.optimum_size,
                       first.nodes_explored + counter.nodes, covers, first.strategy)
