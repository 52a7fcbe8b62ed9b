"""Command-line interface.

Exit codes: 0 success, 1 input error (including an invalid cover passed to
``verify``), 2 node budget exceeded, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from hypervc.baseline import CombineParams, greedy_matching_cover
from hypervc.bench import ALGORITHMS, load_suite, records_to_csv, records_to_json, run_bench
from hypervc.dense import dense_solve, ratio_bound
from hypervc.errors import BudgetExceeded, InputError, InvariantViolation
from hypervc.exact import DEFAULT_NODE_BUDGET as EXACT_BUDGET
from hypervc.exact import exact_min_cover
from hypervc.generators import MODELS, GenSpec, generate
from hypervc.hypergraph import as_fraction, density_report, is_cover
from hypervc.io import parse_cover, read_instance, write_cover, write_instance
from hypervc.sampling import DEFAULT_NODE_BUDGET as SAMPLING_BUDGET
from hypervc.sampling import compute_params, outer_recursion

log = logging.getLogger("hypervc")

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _one_based(vertices):
    return [v + 1 for v in vertices]


def cmd_generate(args) -> int:
    params = {}
    for name in ("epsilon", "r", "q", "ell", "base_epsilon", "copies_scale"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    if args.block:
        params["blocks"] = [[int(x) for x in b.split(",")] for b in args.block]
    spec = GenSpec(args.model, args.n, args.k, args.seed, params)
    gen = generate(spec)
    H = gen.hypergraph
    data = write_instance(H, comments=[spec.key()])
    if args.out in (None, "-"):
        sys.stdout.buffer.write(data)
    else:
        Path(args.out).write_bytes(data)
    if args.meta:
        meta = {"spec": spec.key(), "n": H.n, "m": H.m, "k": H.k,
                "density": [density_report(H, ell).to_dict() for ell in range(H.k)]}
        meta.update(gen.meta)
        if "planted_cover" in meta:
            meta["planted_cover"] = _one_based(meta["planted_cover"])
        _emit(meta, args.meta)
    return EXIT_OK


def cmd_analyze(args) -> int:
    H = read_instance(args.instance)
    ells = [args.ell] if args.ell is not None else list(range(H.k))
    _emit({"n": H.n, "m": H.m, "k": H.k,
           "density": [density_report(H, ell).to_dict() for ell in ells]})
    return EXIT_OK


def cmd_solve(args) -> int:
    H = read_instance(args.instance)
    out = {"algorithm": args.alg, "n": H.n, "m": H.m, "k": H.k}
    code = EXIT_OK
    if args.alg == "greedy":
        cover = greedy_matching_cover(H).vertices
        out["parametric_bound"] = H.k
    elif args.alg == "exact":
        try:
            res = exact_min_cover(H, args.budget or EXACT_BUDGET)
            cover = res.optimum.vertices
            out["nodes_explored"] = res.nodes_explored
        except BudgetExceeded as exc:
            cover = exc.incumbent.vertices if exc.incumbent else ()
            out["budget_exceeded"] = True
            out["nodes_explored"] = exc.nodes_explored
            code = EXIT_BUDGET
    elif args.alg == "dense":
        eps = None if args.epsilon is None else as_fraction(args.epsilon)
        params = CombineParams(j=args.j, exhaustive_check_enabled=args.exhaustive)
        res = dense_solve(H, args.ell, eps, params)
        cover = res.cover.vertices
        out.update(ell=args.ell, epsilon=str(res.epsilon), candidates=len(res.family),
                   guaranteed_min_size=res.family.guaranteed_min_size,
                   parametric_bound=ratio_bound(res.epsilon, H.k, args.ell))
    else:
        params = compute_params(H, args.c, args.p, args.delta, args.seed,
                                args.budget or SAMPLING_BUDGET)
        if params.theoretical_tree_size() > params.node_budget:
            log.warning("worst-case tree size l^(k t) = %.3g exceeds the node budget %d",
                        params.theoretical_tree_size(), params.node_budget)
        rep = outer_recursion(H, params)
        cover = rep.cover.vertices
        out.update(rep.to_dict())
        out["parametric_bound"] = params.ratio_bound()
        if rep.budget_exceeded:
            code = EXIT_BUDGET
        if rep.invariant_violations:
            code = EXIT_INVARIANT
    if not is_cover(H, cover):
        log.error("solver output is not a vertex cover")
        code = EXIT_INVARIANT
    out["cover"] = _one_based(cover)
    out["cover_size"] = len(cover)
    if args.cover_out:
        Path(args.cover_out).write_bytes(write_cover(cover))
    _emit(out)
    return code


def cmd_verify(args) -> int:
    H = read_instance(args.instance)
    cover = parse_cover(Path(args.cover).read_bytes(), H.n)
    C = set(cover)
    uncovered = [e for e in H.edges if C.isdisjoint(e)]
    ok = not uncovered
    _emit({"valid": ok, "size": len(cover), "uncovered_edges": len(uncovered),
           "first_uncovered": _one_based(uncovered[0]) if uncovered else None})
    return EXIT_OK if ok else EXIT_INPUT


def cmd_bench(args) -> int:
    suite = load_suite(args.suite)
    records = run_bench(suite.instances, suite.algorithms, suite.seeds, suite.exact_cutoff_n,
                        suite.ell, suite.sampling, timing=not args.no_timing)
    Path(args.out).write_text(records_to_csv(records))
    if args.json:
        Path(args.json).write_text(records_to_json(records))
    bad = sum(r.invariant_violations for r in records)
    log.info("wrote %d records to %s", len(records), args.out)
    return EXIT_INVARIANT if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypervc",
                                     description="Vertex cover approximation in k-uniform hypergraphs")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a generated instance")
    g.add_argument("--model", required=True, choices=MODELS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--epsilon")
    g.add_argument("--r", type=int, help="circulant: number of base blocks")
    g.add_argument("--block", action="append", help="circulant: explicit base block, e.g. 0,1,3")
    g.add_argument("--q", type=int, help="planted: size of the planted cover")
    g.add_argument("--ell", type=int, help="clique-gadget: density order")
    g.add_argument("--base-epsilon", dest="base_epsilon", help="gadgets: density of the random base")
    g.add_argument("--copies-scale", dest="copies_scale", type=int)
    g.add_argument("--out", help="instance path (default stdout)")
    g.add_argument("--meta", help="also write JSON metadata to this path ('-' for stdout)")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="density report as JSON")
    a.add_argument("instance")
    a.add_argument("--ell", type=int)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("instance")
    s.add_argument("--alg", choices=ALGORITHMS, default="greedy")
    s.add_argument("--ell", type=int, default=0)
    s.add_argument("--epsilon", help="dense: trusted density (default: measured)")
    s.add_argument("--j", type=int, help="dense: exhaustive check depth")
    s.add_argument("--exhaustive", action="store_true", help="dense: enable the exhaustive large-cover check")
    s.add_argument("--c", default="0.05")
    s.add_argument("--p", default="0.9")
    s.add_argument("--delta", default="0.1")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int)
    s.add_argument("--cover-out", dest="cover_out")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a cover file against an instance")
    v.add_argument("instance")
    v.add_argument("cover")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run a benchmark suite")
    b.add_argument("--suite", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--json")
    b.add_argument("--no-timing", action="store_true", help="leave wall_time_ms blank (reproducible output)")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        log.error("invariant violated: %s", exc)
        return EXIT_INVARIANT
    except (InputError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
