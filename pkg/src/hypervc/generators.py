"""Seedable instance families.

Every random choice goes through ``numpy.random.default_rng(seed)`` (PCG64),
so a (model, parameters, seed) triple always yields the same hypergraph.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from hypervc.errors import GenerationError, InputError
from hypervc.hypergraph import Cover, Hypergraph, as_fraction, unrank_combination

MODELS = ("complete", "random-dense", "circulant-regular", "planted", "clique-gadget", "copies-gadget")


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(int(seed))


def _sample_ranks(rng, total: int, count: int) -> List[int]:
    if count > total:
        raise InputError(f"cannot pick {count} distinct edges out of {total}")
    if total < 2**62:
        return sorted(int(x) for x in rng.choice(total, size=count, replace=False))
    chosen = set()
    while len(chosen) < count:
        chosen.add(int(rng.integers(0, 2**62)) % total)
    return sorted(chosen)


def complete(n: int, k: int) -> Hypergraph:
    return Hypergraph._trusted(n, k, combinations(range(n), k)) if 1 <= k <= n else Hypergraph(n, k)


def edge_target(epsilon, n: int, k: int) -> int:
    """ceil(eps * C(n, k)), computed exactly."""
    return math.ceil(as_fraction(epsilon) * math.comb(n, k))


def random_dense(n: int, k: int, epsilon, seed) -> Hypergraph:
    """Exactly ceil(eps*C(n,k)) distinct k-subsets chosen uniformly."""
    epsilon = as_fraction(epsilon)
    if not 0 < epsilon <= 1:
        raise InputError(f"epsilon must lie in (0, 1], got {epsilon}")
    Hypergraph(n, k)  # validates n, k
    total = math.comb(n, k)
    ranks = _sample_ranks(_rng(seed), total, edge_target(epsilon, n, k))
    return Hypergraph._trusted(n, k, (unrank_combination(r, n, k) for r in ranks))


def _canonical_block(block: Sequence[int], n: int) -> Tuple[int, ...]:
    return min(tuple(sorted((v - s) % n for v in block)) for s in block)


def _orbit(block: Sequence[int], n: int) -> set:
    return {tuple(sorted((v + s) % n for v in block)) for s in range(n)}


@dataclass
class CirculantInfo:
    blocks: List[Tuple[int, ...]]
    degree: int


def circulant_regular(n: int, k: int, r: int, seed=0,
                      blocks: Optional[Iterable[Sequence[int]]] = None) -> Tuple[Hypergraph, CirculantInfo]:
    """All n rotations of r base blocks (k-subsets of Z_n containing 0).

    Blocks are drawn uniformly from the distinct rotation classes unless given
    explicitly.  Each block of orbit size o contributes k*o/n to every degree.
    """
    Hypergraph(n, k)
    if blocks is not None:
        chosen = []
        for b in blocks:
            b = tuple(sorted(set(int(v) % n for v in b)))
            if len(b) != k:
                raise InputError(f"block {b} does not have {k} distinct residues")
            chosen.append(_canonical_block(b, n))
        if len(set(chosen)) != len(chosen):
            raise GenerationError("two blocks generate the same rotation class")
    else:
        if r < 1:
            raise InputError("r must be at least 1")
        classes = sorted({_canonical_block((0,) + rest, n)
                          for rest in combinations(range(1, n), k - 1)})
        if r > len(classes):
            raise GenerationError(
                f"only {len(classes)} rotation classes of {k}-subsets of Z_{n}, asked for {r}")
        idx = _rng(seed).choice(len(classes), size=r, replace=False)
        chosen = [classes[i] for i in sorted(int(i) for i in idx)]
    edges = set()
    for b in chosen:
        edges |= _orbit(b, n)
    H = Hypergraph._trusted(n, k, edges)
    deg = H.degrees
    if min(deg) != max(deg):
        raise GenerationError("circulant construction is not regular")  # cannot happen
    return H, CirculantInfo(chosen, deg[0])


def subdense_threshold(n: int, k: int) -> float:
    """n^(k-1) / ln n: the average degree at which the subdense score reaches 1."""
    return n ** (k - 1) / math.log(n)


def circulant_subdense(n: int, k: int, seed=0) -> Tuple[Hypergraph, CirculantInfo]:
    """Smallest-r circulant instance whose degree reaches the subdense threshold."""
    need = subdense_threshold(n, k)
    r = max(1, math.ceil(need / k))
    while True:
        H, info = circulant_regular(n, k, r, seed)
        if info.degree >= need:
            return H, info
        r += 1


def planted(n: int, k: int, q: int, epsilon, seed) -> Tuple[Hypergraph, Cover]:
    """ceil(eps*C(n,k)) edges, each meeting P = {0..q-1}; P is a cover.

    In lexicographic order the k-subsets meeting P are exactly the first
    C(n,k) - C(n-q,k) ones, so sampling ranks below that count suffices.
    """
    epsilon = as_fraction(epsilon)
    Hypergraph(n, k)
    if not 1 <= q <= n:
        raise InputError(f"q must lie in [1, n], got {q}")
    if not 0 < epsilon <= 1:
        raise InputError(f"epsilon must lie in (0, 1], got {epsilon}")
    hitting = math.comb(n, k) - math.comb(n - q, k)
    want = edge_target(epsilon, n, k)
    if want > hitting:
        raise InputError(f"{want} edges requested but only {hitting} k-subsets meet the planted set")
    ranks = _sample_ranks(_rng(seed), hitting, want)
    H = Hypergraph._trusted(n, k, (unrank_combination(r, n, k) for r in ranks))
    return H, Cover(tuple(range(q)))


def clique_gadget(H: Hypergraph, ell: int, epsilon) -> Tuple[Hypergraph, int]:
    """Join ceil(c*N) clique vertices to H, c = 1-(1-eps)^(1/(k-ell)), N = ceil(n/(1-c)).

    Adds every k-subset with at least one clique vertex.  Returns the new
    hypergraph and the number of added vertices (ids n, n+1, ...).
    """
    eps = float(as_fraction(epsilon))
    if not 0 <= ell <= H.k - 1:
        raise InputError(f"ell must lie in [0, {H.k - 1}]")
    if not 0 < eps < 1:
        raise InputError("epsilon must lie in (0, 1)")
    c = 1.0 - (1.0 - eps) ** (1.0 / (H.k - ell))
    N = math.ceil(H.n / (1.0 - c))
    # fewer than one vertex's worth of clique rounds to no clique at all
    added = 0 if c * N < 1 else math.ceil(c * N - 1e-12)
    if added == 0:
        return H, 0
    total = H.n + added
    edges = set(H.edges)
    for e in combinations(range(total), H.k):
        if e[-1] >= H.n:
            edges.add(e)
    return Hypergraph._trusted(total, H.k, edges), added


@dataclass
class CopiesInfo:
    copies: int
    cliques: int
    clique_size: int
    cross_edges: int
    ratio: float  # achieved avg_degree / max_degree
    target: float


def copies_gadget(H: Hypergraph, epsilon, copies_scale: int = 1,
                  cross_edge_budget: int = 200_000) -> Tuple[Hypergraph, CopiesInfo]:
    """Disjoint copies of H plus disjoint (n+k)-cliques, tuned by cross edges.

    ceil((1-eps/k) n) * copies_scale copies and ceil(n eps/k) cliques.  Cross
    edges (meeting both a copy and a clique) are added in lexicographic order
    of (copy, clique, subset rank) while that does not lower d_avg/d_max and
    until the ratio reaches eps or the budget runs out.
    """
    eps = as_fraction(epsilon)
    if not 0 < eps <= 1:
        raise InputError(f"epsilon must lie in (0, 1], got {eps}")
    if copies_scale < 1:
        raise InputError("copies_scale must be at least 1")
    n, k = H.n, H.k
    n_copies = math.ceil((1 - eps / k) * n) * copies_scale
    n_cliques = math.ceil(n * eps / k)
    size = n + k
    edges = set()
    for a in range(n_copies):
        off = a * n
        edges.update(tuple(v + off for v in e) for e in H.edges)
    base = n_copies * n
    for b in range(n_cliques):
        off = base + b * size
        edges.update(tuple(v + off for v in e) for e in combinations(range(size), k))
    total = base + n_cliques * size
    deg = [0] * total
    for e in edges:
        for v in e:
            deg[v] += 1
    deg_sum = sum(deg)
    dmax = max(deg) if deg else 0
    target = float(eps)

    def ratio(s, mx):
        return s / total / mx if mx else 0.0

    added = 0
    current = ratio(deg_sum, dmax)
    if current < target and k >= 2:
        for a in range(n_copies):
            for b in range(n_cliques):
                if added >= cross_edge_budget or current >= target:
                    break
                block = list(range(a * n, a * n + n)) + list(range(base + b * size, base + (b + 1) * size))
                for combo in combinations(block, k):
                    if added >= cross_edge_budget or current >= target:
                        break
                    if combo[0] >= base or combo[-1] < base:
                        continue  # not a cross edge
                    new_max = max([dmax] + [deg[v] + 1 for v in combo])
                    new_ratio = ratio(deg_sum + k, new_max)
                    if new_ratio < current:
                        continue
                    for v in combo:
                        deg[v] += 1
                    deg_sum += k
                    dmax = new_max
                    current = new_ratio
                    edges.add(combo)
                    added += 1
    G = Hypergraph._trusted(total, k, edges)
    return G, CopiesInfo(n_copies, n_cliques, size, added, current, target)


@dataclass
class GenSpec:
    model: str
    n: int
    k: int
    seed: int = 0
    params: Dict[str, object] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: dict) -> "GenSpec":
        d = dict(d)
        try:
            model, n, k = d.pop("model"), int(d.pop("n")), int(d.pop("k"))
        except KeyError as exc:
            raise InputError(f"instance description is missing {exc}") from None
        seed = int(d.pop("seed", 0))
        d.pop("id", None)
        return cls(model, n, k, seed, d)

    def key(self) -> str:
        extra = ",".join(f"{k}={self.params[k]}" for k in sorted(self.params))
        return f"{self.model}(n={self.n},k={self.k},seed={self.seed}{',' if extra else ''}{extra})"


@dataclass
class Generated:
    hypergraph: Hypergraph
    meta: Dict[str, object]


def generate(spec: GenSpec) -> Generated:
    """Build an instance from a GenSpec; ``meta`` carries model-specific extras."""
    p = spec.params
    n, k, seed = spec.n, spec.k, spec.seed
    if spec.model == "complete":
        return Generated(complete(n, k), {})
    if spec.model == "random-dense":
        return Generated(random_dense(n, k, p.get("epsilon", "0.5"), seed), {})
    if spec.model == "circulant-regular":
        if p.get("blocks") is not None:
            H, info = circulant_regular(n, k, 0, seed, blocks=p["blocks"])
        elif p.get("r") is not None:
            H, info = circulant_regular(n, k, int(p["r"]), seed)
        else:
            H, info = circulant_subdense(n, k, seed)
        return Generated(H, {"blocks": [list(b) for b in info.blocks], "degree": info.degree})
    if spec.model == "planted":
        q = int(p.get("q", max(1, n // 3)))
        H, P = planted(n, k, q, p.get("epsilon", "0.3"), seed)
        return Generated(H, {"planted_cover": list(P.vertices)})
    if spec.model in ("clique-gadget", "copies-gadget"):
        base_eps = p.get("base_epsilon", "0.3")
        base = random_dense(n, k, base_eps, seed)
        if spec.model == "clique-gadget":
            H, added = clique_gadget(base, int(p.get("ell", 0)), p.get("epsilon", "0.5"))
            return Generated(H, {"added_vertices": added})
        H, info = copies_gadget(base, p.get("epsilon", "0.5"), int(p.get("copies_scale", 1)))
        return Generated(H, {"copies": info.copies, "cliques": info.cliques,
                             "cross_edges": info.cross_edges, "ratio": info.ratio})
    raise InputError(f"unknown model {spec.model!r}; choose from {', '.join(MODELS)}")
