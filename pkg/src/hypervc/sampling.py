"""Randomized recursive sampling for near-regular, subdense hypergraphs.

``inner_recursion`` samples a small family of seed candidates from the
highest-degree vertices and their links.  ``outer_recursion`` explores the tree
obtained by repeatedly removing one candidate from the current hypergraph and
finishes every path with the greedy k-approximation.

Randomness: each tree node draws from its own PCG64 stream, keyed by
``SeedSequence(seed, spawn_key=(depth, *removed_vertices))``.  A node's
result therefore depends only on which vertices have been removed, which lets
equal nodes reached along different paths share one evaluation.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from hypervc.errors import InputError
from hypervc.hypergraph import Cover, Hypergraph, as_fraction, cover_from_mask, lift, link

DEFAULT_NODE_BUDGET = 10**6
# slack for the float root in r_i when checking it against c*n/psi
ROOT_SLACK = 1e-9


@dataclass(frozen=True)
class SamplingParams:
    c: Fraction
    p: Fraction
    delta_chernoff: Fraction
    beta: Fraction
    psi: Fraction
    l: int
    t: int
    step_size: int
    seed: int
    node_budget: int
    n: int
    k: int
    max_degree: int

    def theoretical_tree_size(self) -> float:
        """l^(k*t), the worst-case size of the removal tree (may be inf)."""
        try:
            return float(self.l) ** (self.k * self.t)
        except OverflowError:
            return math.inf

    def ratio_bound(self) -> float:
        """k / (1 + ((1-delta) p^2 k - 1)(beta - c)) for these parameters."""
        k = self.k
        d = float(self.delta_chernoff)
        p = float(self.p)
        return k / (1 + ((1 - d) * p * p * k - 1) * (float(self.beta) - float(self.c)))

    def to_dict(self) -> dict:
        out = {}
        for key, value in asdict(self).items():
            out[key] = str(value) if isinstance(value, Fraction) else value
        return out


def sample_size(p: float, k: int) -> int:
    """ceil(log(1 - p^(1/k)) / log p): sample size making (1-p^l)^k >= p."""
    return max(1, math.ceil(math.log(1.0 - p ** (1.0 / k)) / math.log(p)))


def compute_params(H: Hypergraph, c="0.05", p="0.9", delta_chernoff="0.1", seed: int = 0,
                   node_budget: int = DEFAULT_NODE_BUDGET) -> SamplingParams:
    c, p, delta = as_fraction(c), as_fraction(p), as_fraction(delta_chernoff)
    for name, value in (("c", c), ("p", p), ("delta_chernoff", delta)):
        if not 0 < value < 1:
            raise InputError(f"{name} must lie in (0, 1), got {value}")
    dmax = H.max_degree
    if dmax == 0:
        raise InputError("hypergraph has no edges")
    n, k = H.n, H.k
    beta = Fraction(H.m, n * dmax)  # avg_degree / (k * max_degree)
    psi = Fraction(math.comb(n, k - 1), dmax)
    t = max(0, math.ceil(psi * (beta / c - 1)))
    step = max(1, math.floor(c * n / psi))
    return SamplingParams(c, p, delta, beta, psi, sample_size(float(p), k), t, step,
                          int(seed), int(node_budget), n, k, dmax)


def inner_recursion(H: Hypergraph, params: SamplingParams, rng: np.random.Generator) -> List[Tuple[int, ...]]:
    """Sampled candidate family for ``H`` (ids of ``H``), sorted and without empty sets."""
    out = []
    _inner(H, params, rng, out)
    return sorted({W for W in out if W})


def _pick(top, params, rng):
    """Uniform sample of l top vertices without replacement, in degree order."""
    if params.l >= len(top):
        return list(top)
    idx = rng.choice(len(top), size=params.l, replace=False)
    return [top[i] for i in sorted(int(i) for i in idx)]


def _inner(H, params, rng, out):
    if H.m == 0:
        return
    if H.k == 1:
        out.append(tuple(sorted(e[0] for e in H.edges))[:params.step_size])
        return
    top = H.top_degree_vertices(params.step_size)
    out.append(tuple(sorted(top)))
    for v in _pick(top, params, rng):
        G, mapping = link(H, v)
        sub = []
        _inner(G, params, rng, sub)
        out.extend(lift(W, mapping) for W in sub)


@dataclass
class StepState:
    i: int
    n_i: int
    m_i: int
    epsilon_i: Fraction
    d_bar_i: Fraction
    s_i: Fraction
    r_i: float


@dataclass
class RunReport:
    cover: Cover
    tree_nodes: int
    steps_completed: int
    invariant_violations: List[str]
    success_estimate: Optional[float]
    budget_exceeded: bool = False
    mean_seed_quality: Optional[float] = None  # mean over IR calls of the best seed's quality
    params: Optional[SamplingParams] = None
    states: List[StepState] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "cover": list(self.cover.vertices),
            "cover_size": self.cover.size,
            "tree_nodes": self.tree_nodes,
            "steps_completed": self.steps_completed,
            "invariant_violations": list(self.invariant_violations),
            "success_estimate": self.success_estimate,
            "mean_seed_quality": self.mean_seed_quality,
            "budget_exceeded": self.budget_exceeded,
            "params": self.params.to_dict() if self.params else None,
        }


def step_state(i: int, n_i: int, m_i: int, k: int, n: int, beta: Fraction) -> StepState:
    eps = Fraction(m_i, math.comb(n_i, k)) if n_i >= k else Fraction(0)
    d_bar = Fraction(m_i * k, n_i) if n_i else Fraction(0)
    r = (1.0 - (1.0 - float(eps)) ** (1.0 / k)) * (n_i - k + 1)
    return StepState(i, n_i, m_i, eps, d_bar, n_i - (1 - beta) * n, r)


def check_step(state: StepState, params: SamplingParams) -> List[str]:
    """The two per-node guarantees: |E_i| >= Delta*s_i and r_i >= c*n/psi."""
    bad = []
    if state.s_i >= 0 and state.m_i < params.max_degree * state.s_i:
        bad.append(f"step {state.i}: |E_i|={state.m_i} < Delta*s_i={params.max_degree * state.s_i}")
    if state.s_i >= params.c * params.n:
        need = params.c * params.n / params.psi
        if state.r_i < float(need) - ROOT_SLACK:
            bad.append(f"step {state.i}: r_i={state.r_i:.6g} < c*n/psi={float(need):.6g}")
    return bad


def seed_quality(H: Hypergraph, W_prime, reference_cover) -> Fraction:
    """|W' & C| / |W'| for a known cover C."""
    W = set(W_prime)
    if not W:
        raise InputError("seed must be non-empty")
    C = set(getattr(reference_cover, "vertices", reference_cover))
    return Fraction(len(W & C), len(W))


class _Search:
    """Memoized removal-tree search over residuals of the original hypergraph.

    A residual is identified by the set of removed vertices.  Its edges are
    the rows of the original edge array avoiding that set; keeping original
    ids (renumbering is monotone) preserves every degree order and
    tie-break, so each node sees exactly what ``inner_recursion`` would on
    the renumbered residual.
    """

    def __init__(self, H, params, reference_cover):
        self.H = H
        self.params = params
        self.E = np.asarray(H.edges, dtype=np.int64).reshape(-1, H.k)
        self.masks = H.edge_masks
        self.ref = None if reference_cover is None else set(
            getattr(reference_cover, "vertices", reference_cover))
        self.memo: Dict[Tuple[int, frozenset], Tuple[Tuple[int, ...], int]] = {}
        self.nodes = 0
        self.budget_exceeded = False
        self.violations: List[str] = []
        self.states: List[StepState] = []
        self.ir_calls = 0
        self.ir_hits = 0
        self.quality_sum = Fraction(0)

    def rng(self, depth, removed):
        ss = np.random.SeedSequence(self.params.seed, spawn_key=(depth, *sorted(removed)))
        return np.random.Generator(np.random.PCG64(ss))

    def run(self):
        return self.solve(0, frozenset(), np.arange(len(self.E)))

    def solve(self, i, removed, alive=None, parent_alive=None, W=()):
        """Best cover (original ids) of the residual, plus its number of removal steps.

        ``alive`` indexes the original edges that avoid ``removed``; when absent
        it is derived from ``parent_alive`` minus the edges touching ``W``, and
        only if the node is not memoized already.
        """
        key = (i, removed)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if alive is None:
            alive = self._drop(parent_alive, W)
        result = self._expand(i, removed, alive)
        self.memo[key] = result
        return result

    def _drop(self, alive, W):
        """Rows of ``alive`` whose edges avoid every vertex of ``W``."""
        gone = np.zeros(self.H.n, dtype=bool)
        gone[list(W)] = True
        return alive[~gone[self.E[alive]].any(axis=1)]

    def _greedy(self, alive, n_alive):
        used = 0
        masks = self.masks
        k = self.H.k
        free = n_alive
        for idx in alive.tolist():
            e = masks[idx]
            if not used & e:
                used |= e
                free -= k
                if free < k:
                    break
        return cover_from_mask(used)

    def _family(self, removed, alive, rng):
        """inner_recursion on the residual, in original ids."""
        H, params = self.H, self.params
        rows = self.E[alive]
        if H.k == 1:
            return [W for W in [tuple(sorted(rows[:, 0].tolist()))[:params.step_size]] if W]
        deg = np.bincount(rows.ravel(), minlength=H.n)
        remaining = [v for v in range(H.n) if v not in removed]
        top = sorted(remaining, key=lambda v: (-deg[v], v))[:params.step_size]
        out = [tuple(sorted(top))]
        for v in _pick(top, params, rng):
            sub_rows = rows[(rows == v).any(axis=1)]
            mapping = tuple(u for u in remaining if u != v)
            index = {u: j for j, u in enumerate(mapping)}
            images = {tuple(index[u] for u in e if u != v) for e in sub_rows.tolist()}
            G = Hypergraph._trusted(len(mapping), H.k - 1, images)
            sub = []
            _inner(G, params, rng, sub)
            out.extend(lift(W, mapping) for W in sub)
        return sorted({W for W in out if W})

    def _expand(self, i, removed, alive):
        params = self.params
        self.nodes += 1
        if len(alive) == 0:
            return (), 0
        state = step_state(i, self.H.n - len(removed), len(alive), self.H.k, params.n, params.beta)
        self.states.append(state)
        self.violations.extend(check_step(state, params))
        finish = self._greedy(alive, state.n_i)
        if i >= params.t or state.s_i <= params.c * params.n:
            return finish, 0
        if self.nodes > params.node_budget:
            self.budget_exceeded = True
            return finish, 0
        family = self._family(removed, alive, self.rng(i, removed))
        if self.ref is not None and family:
            self.ir_calls += 1
            best_q = max(seed_quality(None, W, self.ref) for W in family)
            self.quality_sum += best_q
            if best_q >= params.p:
                self.ir_hits += 1
        # the empty seed: stop here and finish greedily
        best, best_steps = finish, 0
        for W in family:
            rest, steps = self.solve(i + 1, removed.union(W), parent_alive=alive, W=W)
            cand = tuple(sorted(W + rest))
            if (len(cand), cand) < (len(best), best):
                best, best_steps = cand, steps + 1
        return best, best_steps


def outer_recursion(H: Hypergraph, params: SamplingParams, reference_cover=None) -> RunReport:
    """Search the removal tree and return the smallest cover found.

    With ``reference_cover`` set, ``success_estimate`` is the fraction of
    sampled families holding a seed of quality at least p and
    ``mean_seed_quality`` the average quality of each family's best seed.
    """
    search = _Search(H, params, reference_cover)
    cover, steps = search.run()
    estimate = quality = None
    if search.ir_calls:
        estimate = search.ir_hits / search.ir_calls
        quality = float(search.quality_sum / search.ir_calls)
    return RunReport(
        cover=Cover(cover),
        tree_nodes=search.nodes,
        steps_completed=steps,
        invariant_violations=search.violations,
        success_estimate=estimate,
        budget_exceeded=search.budget_exceeded,
        mean_seed_quality=quality,
        params=params,
        states=search.states,
    )


def sampling_vc(H: Hypergraph, c="0.05", p="0.9", delta_chernoff="0.1", seed: int = 0,
                node_budget: int = DEFAULT_NODE_BUDGET) -> RunReport:
    if H.m == 0:
        return RunReport(Cover(()), 0, 0, [], None)
    return outer_recursion(H, compute_params(H, c, p, delta_chernoff, seed, node_budget))
