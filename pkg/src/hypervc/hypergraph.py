"""Immutable k-uniform hypergraphs and the degree/density/cover primitives.

Vertices are the integers ``0..n-1``.  Edges are stored as sorted tuples and
the edge tuple itself is sorted lexicographically, so two hypergraphs with the
same vertex count, uniformity and edge set compare (and hash) equal.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Tuple

from hypervc.errors import InputError

Edge = Tuple[int, ...]


def as_fraction(x) -> Fraction:
    """Convert ints, decimal strings, ``"a/b"`` strings and floats to a Fraction.

    Floats go through their shortest repr so that ``0.1`` becomes ``1/10``
    rather than the nearest binary fraction.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InputError(f"not a finite number: {x!r}")
        return Fraction(repr(x))
    try:
        return Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {x!r}") from exc


class Hypergraph:
    __slots__ = ("n", "k", "edges", "_edge_set", "_degrees", "_masks")

    def __init__(self, n: int, k: int, edges: Iterable[Iterable[int]] = ()):
        if not isinstance(n, int) or not isinstance(k, int):
            raise InputError("n and k must be integers")
        if not 1 <= k <= n:
            raise InputError(f"need 1 <= k <= n, got n={n}, k={k}")
        canon = []
        seen = set()
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != k or len(set(t)) != k:
                raise InputError(f"edge {t} does not have {k} distinct vertices")
            if t[0] < 0 or t[-1] >= n:
                raise InputError(f"edge {t} has a vertex outside [0, {n})")
            if t in seen:
                raise InputError(f"duplicate edge {t}")
            seen.add(t)
            canon.append(t)
        canon.sort()
        self._init(n, k, tuple(canon), frozenset(seen))

    def _init(self, n, k, edges, edge_set):
        self.n = n
        self.k = k
        self.edges = edges
        self._edge_set = edge_set
        self._degrees = None
        self._masks = None

    @classmethod
    def _trusted(cls, n: int, k: int, edges: Iterable[Edge]) -> "Hypergraph":
        # caller guarantees sorted, distinct, in-range edges
        edges = tuple(sorted(edges))
        h = cls.__new__(cls)
        h._init(n, k, edges, frozenset(edges))
        return h

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self):
        return len(self.edges)

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in self._edge_set

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self.k == other.k and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.k, self.edges))

    def __repr__(self):
        return f"Hypergraph(n={self.n}, k={self.k}, m={self.m})"

    @property
    def degrees(self) -> Tuple[int, ...]:
        if self._degrees is None:
            deg = [0] * self.n
            for e in self.edges:
                for v in e:
                    deg[v] += 1
            self._degrees = tuple(deg)
        return self._degrees

    @property
    def edge_masks(self) -> Tuple[int, ...]:
        """Edges as vertex bitmasks, in canonical edge order."""
        if self._masks is None:
            self._masks = tuple(sum(1 << v for v in e) for e in self.edges)
        return self._masks

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.n else 0

    @property
    def avg_degree(self) -> Fraction:
        return Fraction(self.m * self.k, self.n)

    def top_degree_vertices(self, count: int) -> Tuple[int, ...]:
        """The ``count`` highest-degree vertices, ties broken by ascending id."""
        deg = self.degrees
        return tuple(sorted(range(self.n), key=lambda v: (-deg[v], v))[:max(count, 0)])


@dataclass(frozen=True)
class Cover:
    vertices: Tuple[int, ...]

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "Cover":
        return cls(tuple(sorted(set(vertices))))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


@dataclass(frozen=True)
class DensityReport:
    ell: int
    epsilon_star: Fraction
    avg_degree: Fraction
    max_degree: int
    is_regular: bool
    subdense_score: float
    witness: Tuple[int, ...] = ()  # an ell-subset attaining epsilon_star

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "epsilon_star": str(self.epsilon_star),
            "epsilon_star_float": float(self.epsilon_star),
            "avg_degree": str(self.avg_degree),
            "avg_degree_float": float(self.avg_degree),
            "max_degree": self.max_degree,
            "is_regular": self.is_regular,
            "subdense_score": self.subdense_score,
            "witness": list(self.witness),
        }


def _check_vertex(H: Hypergraph, v) -> None:
    if not isinstance(v, int) or not 0 <= v < H.n:
        raise InputError(f"vertex {v!r} outside [0, {H.n})")


def _check_vertex_set(H: Hypergraph, S: Iterable[int]) -> frozenset:
    S = frozenset(S)
    for v in S:
        _check_vertex(H, v)
    return S


def degree(H: Hypergraph, v: int) -> int:
    _check_vertex(H, v)
    return H.degrees[v]


def set_degree(H: Hypergraph, S: Iterable[int]) -> int:
    S = _check_vertex_set(H, S)
    if len(S) > H.k:
        raise InputError(f"|S| = {len(S)} exceeds k = {H.k}")
    if not S:
        return H.m
    return sum(1 for e in H.edges if S.issubset(e))


def density_report(H: Hypergraph, ell: int) -> DensityReport:
    if not isinstance(ell, int) or not 0 <= ell <= H.k - 1:
        raise InputError(f"ell must lie in [0, {H.k - 1}], got {ell!r}")
    n, k = H.n, H.k
    denom = math.comb(n - ell, k - ell)
    if ell == 0:
        min_deg, witness = H.m, ()
    else:
        counts = Counter(S for e in H.edges for S in combinations(e, ell))
        if len(counts) < math.comb(n, ell):
            # the lexicographically first ell-subset never appearing in an edge
            witness = next(S for S in combinations(range(n), ell) if S not in counts)
            min_deg = 0
        else:
            witness, min_deg = min(counts.items(), key=lambda kv: (kv[1], kv[0]))
    deg = H.degrees
    dmax = max(deg)
    avg = H.avg_degree
    score = float(avg) * math.log(n) / n ** (k - 1) if n > 1 else 0.0
    return DensityReport(
        ell=ell,
        epsilon_star=Fraction(min_deg, denom),
        avg_degree=avg,
        max_degree=dmax,
        is_regular=min(deg) == dmax,
        subdense_score=score,
        witness=tuple(witness),
    )


def is_cover(H: Hypergraph, C: Iterable[int]) -> bool:
    C = _check_vertex_set(H, C)
    return all(not C.isdisjoint(e) for e in H.edges)


def uncovered_subhypergraph(H: Hypergraph, W: Iterable[int]) -> Hypergraph:
    W = _check_vertex_set(H, W)
    if not W:
        return H
    return Hypergraph._trusted(H.n, H.k, (e for e in H.edges if W.isdisjoint(e)))


def _compact(n: int, removed: frozenset) -> Tuple[Tuple[int, ...], dict]:
    mapping = tuple(v for v in range(n) if v not in removed)
    return mapping, {old: new for new, old in enumerate(mapping)}


def link(H: Hypergraph, v: int) -> Tuple[Hypergraph, Tuple[int, ...]]:
    """Link of ``v``: edges through ``v`` with ``v`` deleted, on ``V - {v}``.

    Returns the (k-1)-uniform link and ``mapping`` with ``mapping[new] == old``.
    """
    if H.k < 2:
        raise InputError("link needs k >= 2")
    _check_vertex(H, v)
    mapping, index = _compact(H.n, frozenset((v,)))
    images = {tuple(index[u] for u in e if u != v) for e in H.edges if v in e}
    return Hypergraph._trusted(H.n - 1, H.k - 1, images), mapping


def link_of_set(H: Hypergraph, S: Iterable[int]) -> Tuple[Hypergraph, Tuple[int, ...]]:
    """Edges containing all of ``S``, restricted to ``V - S``; (k-|S|)-uniform."""
    S = _check_vertex_set(H, S)
    if len(S) >= H.k:
        raise InputError(f"|S| = {len(S)} must be smaller than k = {H.k}")
    mapping, index = _compact(H.n, S)
    images = {tuple(index[u] for u in e if u not in S) for e in H.edges if S.issubset(e)}
    return Hypergraph._trusted(H.n - len(S), H.k - len(S), images), mapping


def remove_vertices(H: Hypergraph, W: Iterable[int]) -> Tuple[Hypergraph, Tuple[int, ...]]:
    """Delete ``W`` and every edge it touches; the remaining vertices are renumbered.

    The residual must still have at least k vertices unless it has no edges,
    in which case ``None`` is returned in place of the hypergraph.
    """
    W = _check_vertex_set(H, W)
    mapping, index = _compact(H.n, W)
    kept = [tuple(index[u] for u in e) for e in H.edges if W.isdisjoint(e)]
    if len(mapping) < H.k:
        assert not kept
        return None, mapping
    return Hypergraph._trusted(len(mapping), H.k, kept), mapping


def lift(vertices: Iterable[int], mapping: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted(mapping[v] for v in vertices))


def maximal_disjoint_edges(H: Hypergraph) -> Tuple[Edge, ...]:
    """Greedy maximal matching: scan edges in canonical order, keep disjoint ones."""
    used = 0
    picked = []
    free = H.n
    for e, mask in zip(H.edges, H.edge_masks):
        if not used & mask:
            used |= mask
            picked.append(e)
            free -= H.k
            if free < H.k:
                break
    return tuple(picked)


def complete_edges(n: int, k: int):
    return combinations(range(n), k)


def unrank_combination(rank: int, n: int, k: int) -> Edge:
    """The ``rank``-th k-subset of ``range(n)`` in lexicographic order."""
    total = math.comb(n, k)
    if not 0 <= rank < total:
        raise InputError(f"rank {rank} outside [0, C({n},{k}))")
    out = []
    x = 0
    for remaining in range(k, 0, -1):
        while True:
            block = math.comb(n - x - 1, remaining - 1)
            if rank < block:
                break
            rank -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def cover_from_mask(mask: int) -> Tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m

