"""Candidate extraction for dense hypergraphs and the assembled dense solver.

``extract_candidates`` builds a family of seed sets, at least one of which lies
inside every minimum cover; ``dense_vc`` completes each seed with
``combine_with_seed`` and keeps the smallest result.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Tuple

from hypervc.baseline import CombineParams, combine_with_seed
from hypervc.errors import InputError, InvariantViolation
from hypervc.hypergraph import (
    Cover,
    Hypergraph,
    as_fraction,
    density_report,
    lift,
    link,
    link_of_set,
)

# float slack when comparing candidate sizes against an irrational bound
SIZE_SLACK = 1e-9


def top_fraction(epsilon: float, k: int) -> float:
    """1 - (1 - eps)^(1/k): share of vertices put into the top set."""
    return 1.0 - (1.0 - epsilon) ** (1.0 / k)


def recursion_epsilon(epsilon: float, k: int) -> float:
    """Density guaranteed for the link of a top vertex in a k-uniform instance."""
    return 1.0 - (1.0 - epsilon) ** ((k - 1) / k)


def top_set_size(epsilon: float, n: int, k: int) -> int:
    # the tiny offset keeps float noise from rounding an exact integer upward
    return min(n, max(0, math.ceil(top_fraction(epsilon, k) * n - 1e-12)))


def candidate_size_bound(epsilon, n: int, k: int, ell: int = 0) -> float:
    return top_fraction(float(epsilon), k - ell) * (n - k + 1)


@dataclass
class CandidateFamily:
    candidates: List[Tuple[int, ...]]
    source_epsilon: Fraction
    ell: int
    guaranteed_min_size: float
    nodes: int = field(default=0, compare=False)

    def __len__(self):
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)


def _check_dense(H: Hypergraph, epsilon: Fraction, ell: int) -> None:
    report = density_report(H, ell)
    if report.epsilon_star < epsilon:
        raise InputError(
            f"hypergraph is not {ell}-wise {epsilon}-dense: subset {list(report.witness)} "
            f"has density {report.epsilon_star}"
        )


def _extract(H: Hypergraph, epsilon: float, out: list) -> int:
    """Append candidates (in H's ids) to ``out``; returns recursion nodes visited."""
    if H.k == 1:
        out.append(tuple(e[0] for e in H.edges))
        return 1
    top = H.top_degree_vertices(top_set_size(epsilon, H.n, H.k))
    out.append(tuple(sorted(top)))
    nodes = 1
    eps_next = recursion_epsilon(epsilon, H.k)
    for v in top:
        G, mapping = link(H, v)
        sub = []
        nodes += _extract(G, eps_next, sub)
        out.extend(lift(W, mapping) for W in sub)
    return nodes


def _dedupe(cands):
    return sorted(set(cands))


def _finish(H, cands, epsilon, ell, nodes) -> CandidateFamily:
    bound = candidate_size_bound(epsilon, H.n, H.k, ell)
    for W in cands:
        if len(W) < bound - SIZE_SLACK:
            raise InvariantViolation(f"candidate of size {len(W)} below guaranteed {bound:.6f}")
    cap = H.n ** H.k + H.n
    if len(cands) > cap:
        raise InvariantViolation(f"{len(cands)} candidates exceed the cap n^k + n = {cap}")
    return CandidateFamily(cands, epsilon, ell, bound, nodes)


def extract_candidates(H: Hypergraph, epsilon) -> CandidateFamily:
    epsilon = as_fraction(epsilon)
    if not 0 <= epsilon <= 1:
        raise InputError(f"epsilon must lie in [0, 1], got {epsilon}")
    _check_dense(H, epsilon, 0)
    cands = []
    nodes = _extract(H, float(epsilon), cands)
    return _finish(H, _dedupe(cands), epsilon, 0, nodes)


def extract_candidates_lwise(H: Hypergraph, epsilon, ell: int) -> CandidateFamily:
    """Run the 0-wise extraction on the link of every ell-subset and pool the results."""
    if ell == 0:
        return extract_candidates(H, epsilon)
    epsilon = as_fraction(epsilon)
    if not 0 <= epsilon <= 1:
        raise InputError(f"epsilon must lie in [0, 1], got {epsilon}")
    if not isinstance(ell, int) or not 1 <= ell <= H.k - 1:
        raise InputError(f"ell must lie in [0, {H.k - 1}], got {ell!r}")
    _check_dense(H, epsilon, ell)
    cands = []
    nodes = 0
    for S in combinations(range(H.n), ell):
        G, mapping = link_of_set(H, S)
        sub = []
        nodes += _extract(G, float(epsilon), sub)
        cands.extend(lift(W, mapping) for W in sub)
    return _finish(H, _dedupe(cands), epsilon, ell, nodes)


def ratio_bound(epsilon, k: int, ell: int = 0) -> float:
    """k / (k - (k-1)(1-eps)^(1/(k-ell))), the dense approximation guarantee."""
    rest = (1.0 - float(epsilon)) ** (1.0 / (k - ell))
    return k / (k - (k - 1) * rest)


@dataclass
class DenseResult:
    cover: Cover
    family: CandidateFamily
    seed: Tuple[int, ...]  # the candidate that produced the cover (() for greedy)
    epsilon: Fraction
    ell: int


def dense_solve(H: Hypergraph, ell: int = 0, epsilon=None,
                params: CombineParams = CombineParams()) -> DenseResult:
    if epsilon is None:
        epsilon = density_report(H, ell).epsilon_star
    family = extract_candidates_lwise(H, epsilon, ell)
    best = combine_with_seed(H, (), params)
    best_seed: Tuple[int, ...] = ()
    for W in family.candidates:
        C = combine_with_seed(H, W, params)
        if (C.size, C.vertices) < (best.size, best.vertices):
            best, best_seed = C, W
    return DenseResult(best, family, best_seed, family.source_epsilon, ell)


def dense_vc(H: Hypergraph, ell: int = 0, epsilon: Optional[Fraction] = None,
             params: CombineParams = CombineParams()) -> Cover:
    return dense_solve(H, ell, epsilon, params).cover
