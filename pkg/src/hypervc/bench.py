"""Benchmark harness: solve suites of instances, emit ratio tables as CSV/JSON."""
from __future__ import annotations

import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from hypervc.baseline import greedy_matching_cover
from hypervc.dense import dense_solve, ratio_bound
from hypervc.errors import BudgetExceeded, HypervcError, InputError
from hypervc.exact import exact_min_cover, matching_lower_bound
from hypervc.generators import GenSpec, generate
from hypervc.hypergraph import Hypergraph, density_report, is_cover
from hypervc.io import read_instance
from hypervc.sampling import compute_params, outer_recursion

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

ALGORITHMS = ("exact", "greedy", "dense", "sampling")
DEFAULT_EXACT_CUTOFF = 14


@dataclass
class BenchRecord:
    instance_id: str
    n: int
    m: int
    k: int
    ell: int
    epsilon_star: float
    avg_degree: float
    max_degree: int
    algorithm: str
    seed: Optional[int]
    cover_size: Optional[int]
    exact_optimum: Optional[int]
    matching_lb: int
    ratio_vs_exact: Optional[float]
    ratio_vs_lb: Optional[float]
    parametric_bound: Optional[float]
    wall_time_ms: Optional[float]
    invariant_violations: int
    error: str = ""


COLUMNS = tuple(f.name for f in fields(BenchRecord))


@dataclass(frozen=True)
class SamplingOptions:
    c: str = "0.05"
    p: str = "0.9"
    delta: str = "0.1"
    budget: int = 10**6


# a tuple pairs an instance id with a hypergraph or with the file to read it from
Instance = Union[GenSpec, str, Path, Tuple[str, Union[Hypergraph, str, Path]]]


def _load(item: Instance) -> Tuple[str, Hypergraph]:
    if isinstance(item, GenSpec):
        return item.key(), generate(item).hypergraph
    if isinstance(item, tuple):
        name, source = item
        return name, source if isinstance(source, Hypergraph) else read_instance(source)
    return str(item), read_instance(item)


def _ratio(num, den):
    if num is None or den is None:
        return None
    if den == 0:
        return 1.0 if num == 0 else float("inf")
    return num / den


def _solve(H, algorithm, seed, ell, opts: SamplingOptions):
    """(cover vertices, parametric bound, violation count)."""
    if algorithm == "greedy":
        return greedy_matching_cover(H).vertices, float(H.k), 0
    if algorithm == "exact":
        return exact_min_cover(H).optimum.vertices, 1.0, 0
    if algorithm == "dense":
        res = dense_solve(H, ell)
        return res.cover.vertices, ratio_bound(res.epsilon, H.k, ell), 0
    if algorithm == "sampling":
        if H.m == 0:
            return (), 1.0, 0
        params = compute_params(H, opts.c, opts.p, opts.delta, seed, opts.budget)
        rep = outer_recursion(H, params)
        return rep.cover.vertices, params.ratio_bound(), len(rep.invariant_violations)
    raise InputError(f"unknown algorithm {algorithm!r}")


def run_bench(suite: Iterable[Instance], algorithms: Sequence[str] = ("greedy", "dense", "sampling"),
              seeds: Sequence[int] = (0,), exact_cutoff_n: int = DEFAULT_EXACT_CUTOFF, ell: int = 0,
              sampling: SamplingOptions = SamplingOptions(), timing: bool = True) -> List[BenchRecord]:
    """One record per (instance, algorithm, seed); failures are recorded, not raised.

    Deterministic algorithms are solved once per instance and their record is
    repeated for every seed.  Records come back sorted by
    (instance_id, algorithm, seed).  With ``timing=False`` wall times are left
    blank so that output is byte-reproducible.
    """
    for a in algorithms:
        if a not in ALGORITHMS:
            raise InputError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
    records = []
    for item in suite:
        instance_id, H = _load(item)
        report = density_report(H, min(ell, H.k - 1))
        lb = matching_lower_bound(H)
        opt = None
        if H.n <= exact_cutoff_n:
            try:
                opt = exact_min_cover(H).optimum_size
            except BudgetExceeded:
                opt = None
        cache = {}
        for algorithm in algorithms:
            for seed in seeds:
                key = (algorithm, seed if algorithm == "sampling" else None)
                if key not in cache:
                    t0 = time.perf_counter()
                    error = ""
                    cover, bound, bad = None, None, 0
                    try:
                        cover, bound, bad = _solve(H, algorithm, seed, report.ell, sampling)
                        if not is_cover(H, cover):
                            error = "output is not a vertex cover"
                            bad += 1
                    except (HypervcError, RecursionError) as exc:
                        error = f"{type(exc).__name__}: {exc}"
                    elapsed = (time.perf_counter() - t0) * 1000.0
                    cache[key] = (cover, bound, bad, error, elapsed)
                cover, bound, bad, error, elapsed = cache[key]
                size = None if cover is None else len(cover)
                records.append(BenchRecord(
                    instance_id=instance_id, n=H.n, m=H.m, k=H.k, ell=report.ell,
                    epsilon_star=float(report.epsilon_star), avg_degree=float(report.avg_degree),
                    max_degree=report.max_degree, algorithm=algorithm, seed=seed,
                    cover_size=size, exact_optimum=opt, matching_lb=lb,
                    ratio_vs_exact=_ratio(size, opt), ratio_vs_lb=_ratio(size, lb),
                    parametric_bound=bound, wall_time_ms=elapsed if timing else None,
                    invariant_violations=bad, error=error,
                ))
    records.sort(key=lambda r: (r.instance_id, r.algorithm, r.seed if r.seed is not None else -1))
    return records


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in records:
        writer.writerow([_cell(getattr(r, c)) for c in COLUMNS])
    return buf.getvalue()


def records_to_json(records: Iterable[BenchRecord]) -> str:
    return json.dumps([asdict(r) for r in records], indent=2, sort_keys=False) + "\n"


@dataclass
class Suite:
    instances: List[Instance]
    algorithms: List[str]
    seeds: List[int]
    exact_cutoff_n: int = DEFAULT_EXACT_CUTOFF
    ell: int = 0
    sampling: SamplingOptions = SamplingOptions()


def load_suite(path) -> Suite:
    """Suite description from a ``.json`` or ``.toml`` file.

    Keys: ``instances`` (list of generator specs or ``{"path": ..., "id": ...}``),
    ``algorithms``, ``seeds``, ``exact_cutoff_n``, ``ell`` and a ``sampling``
    table with ``c``, ``p``, ``delta``, ``budget``.
    """
    path = Path(path)
    raw = path.read_bytes()
    try:
        if path.suffix.lower() == ".toml":
            data = tomllib.loads(raw.decode("utf-8"))
        else:
            data = json.loads(raw)
    except (ValueError, tomllib.TOMLDecodeError) as exc:
        raise InputError(f"cannot read suite {path}: {exc}") from None
    instances: List[Instance] = []
    for entry in data.get("instances", []):
        if "path" in entry:
            # ids come from the suite text, so output does not depend on the working directory
            p = Path(entry["path"])
            instances.append((str(entry.get("id", entry["path"])), p if p.is_absolute() else path.parent / p))
        else:
            instances.append(GenSpec.from_dict(entry))
    samp = data.get("sampling", {})
    return Suite(
        instances=instances,
        algorithms=list(data.get("algorithms", ["greedy", "dense", "sampling"])),
        seeds=[int(s) for s in data.get("seeds", [0])],
        exact_cutoff_n=int(data.get("exact_cutoff_n", DEFAULT_EXACT_CUTOFF)),
        ell=int(data.get("ell", 0)),
        sampling=SamplingOptions(str(samp.get("c", "0.05")), str(samp.get("p", "0.9")),
                                 str(samp.get("delta", "0.1")), int(samp.get("budget", 10**6))),
    )
