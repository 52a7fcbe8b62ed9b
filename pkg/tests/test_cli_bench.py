import csv
import io
import json

import pytest

from hypervc.bench import COLUMNS, BenchRecord, load_suite, records_to_csv, records_to_json, run_bench
from hypervc.cli import main
from hypervc.generators import GenSpec, complete
from hypervc.hypergraph import Hypergraph
from hypervc.io import write_instance

GOLDEN_COLUMNS = (
    "instance_id,n,m,k,ell,epsilon_star,avg_degree,max_degree,algorithm,seed,cover_size,"
    "exact_optimum,matching_lb,ratio_vs_exact,ratio_vs_lb,parametric_bound,wall_time_ms,"
    "invariant_violations,error"
)


def _by_alg(records):
    return {r.algorithm: r for r in records}


def test_bench_greedy_single_edge():
    H = Hypergraph(3, 3, [(0, 1, 2)])
    r = _by_alg(run_bench([("edge", H)], ["greedy"]))["greedy"]
    assert r.ratio_vs_exact == 3 and r.parametric_bound == 3
    assert r.cover_size == 3 and r.exact_optimum == 1 and r.matching_lb == 1


def test_bench_dense_complete():
    r = _by_alg(run_bench([("k53", complete(5, 3))], ["dense"]))["dense"]
    assert r.ratio_vs_exact == 1 and r.parametric_bound == 1


def test_bench_records_invariants():
    suite = [GenSpec("random-dense", 9, 3, s, {"epsilon": "0.4"}) for s in range(3)]
    suite.append(GenSpec("circulant-regular", 16, 3, 0, {}))
    recs = run_bench(suite, ["exact", "greedy", "dense", "sampling"], seeds=[0, 1], exact_cutoff_n=16)
    assert len(recs) == 4 * 4 * 2
    for r in recs:
        assert r.error == "" and r.invariant_violations == 0
        assert r.ratio_vs_lb >= 1
        assert r.cover_size >= r.exact_optimum
        if r.algorithm == "greedy":
            assert r.ratio_vs_lb <= r.k
    keys = [(r.instance_id, r.algorithm, r.seed) for r in recs]
    assert keys == sorted(keys)


def test_bench_skips_exact_above_cutoff():
    r = run_bench([GenSpec("random-dense", 16, 2, 0, {"epsilon": "0.3"})], ["greedy"], exact_cutoff_n=14)[0]
    assert r.exact_optimum is None and r.ratio_vs_exact is None


def test_bench_records_errors_and_continues():
    recs = run_bench([("empty", Hypergraph(4, 2)), ("k42", complete(4, 2))], ["sampling", "greedy"])
    assert all(r.error == "" for r in recs)
    assert [r.cover_size for r in recs if r.instance_id == "empty"] == [0, 0]


def test_csv_golden_columns():
    assert ",".join(COLUMNS) == GOLDEN_COLUMNS
    text = records_to_csv(run_bench([("k42", complete(4, 2))], ["greedy"], timing=False))
    rows = list(csv.reader(io.StringIO(text)))
    assert ",".join(rows[0]) == GOLDEN_COLUMNS
    assert rows[1] == ["k42", "4", "6", "2", "0", "1.000000", "3.000000", "3", "greedy", "0",
                       "4", "3", "2", "1.333333", "2.000000", "2.000000", "", "0", ""]
    data = json.loads(records_to_json(run_bench([("k42", complete(4, 2))], ["greedy"])))
    assert tuple(data[0]) == COLUMNS


def test_load_suite_json_and_toml(tmp_path):
    inst = tmp_path / "a.hvc"
    inst.write_bytes(write_instance(complete(4, 2)))
    (tmp_path / "s.json").write_text(json.dumps({
        "instances": [{"path": "a.hvc"}, {"model": "complete", "n": 5, "k": 3}],
        "algorithms": ["greedy"], "seeds": [1, 2], "sampling": {"c": "0.1"}}))
    (tmp_path / "s.toml").write_text(
        'algorithms = ["greedy"]\nseeds = [1, 2]\n[[instances]]\npath = "a.hvc"\n'
        '[[instances]]\nmodel = "complete"\nn = 5\nk = 3\n[sampling]\nc = "0.1"\n')
    a = load_suite(tmp_path / "s.json")
    b = load_suite(tmp_path / "s.toml")
    assert a == b
    assert a.sampling.c == "0.1" and a.seeds == [1, 2]


def _run(argv, capsys):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_cli_generate_solve_verify(tmp_path, capsys):
    inst = tmp_path / "h.hvc"
    code, _ = _run(["generate", "--model", "random-dense", "--n", 9, "--k", 3, "--epsilon", "0.4",
                    "--seed", 3, "--out", inst], capsys)
    assert code == 0
    for alg in ("exact", "greedy", "dense", "sampling"):
        cover = tmp_path / f"{alg}.txt"
        code, out = _run(["solve", inst, "--alg", alg, "--cover-out", cover], capsys)
        assert code == 0, out.err
        res = json.loads(out.out)
        assert res["cover_size"] == len(res["cover"])
        code, out = _run(["verify", inst, cover], capsys)
        assert code == 0 and json.loads(out.out)["valid"]
    bad = tmp_path / "bad.txt"
    bad.write_text("1\n")
    code, out = _run(["verify", inst, bad], capsys)
    assert code == 1 and not json.loads(out.out)["valid"]


def test_cli_analyze_and_meta(tmp_path, capsys):
    inst = tmp_path / "p.hvc"
    code, out = _run(["generate", "--model", "planted", "--n", 9, "--k", 3, "--q", 3,
                      "--epsilon", "0.2", "--out", inst, "--meta", "-"], capsys)
    assert code == 0
    meta = json.loads(out.out)
    assert meta["planted_cover"] == [1, 2, 3]
    code, out = _run(["analyze", inst, "--ell", 1], capsys)
    assert code == 0 and json.loads(out.out)["density"][0]["ell"] == 1


def test_cli_exit_codes(tmp_path, capsys, caplog):
    bad = tmp_path / "bad.hvc"
    bad.write_text("p hvc 3 1 2\ne 1 5\n")
    code, _ = _run(["solve", bad], capsys)
    assert code == 1 and "line 2" in caplog.text
    code, _ = _run(["solve", tmp_path / "missing.hvc"], capsys)
    assert code == 1
    inst = tmp_path / "d.hvc"
    inst.write_bytes(write_instance(complete(12, 3)))
    code, out = _run(["solve", inst, "--alg", "exact", "--budget", 2], capsys)
    assert code == 2 and json.loads(out.out)["budget_exceeded"]
    code, out = _run(["solve", inst, "--alg", "sampling", "--c", "0.02", "--budget", 2], capsys)
    assert code == 2
    code, _ = _run(["solve", inst, "--alg", "dense", "--epsilon", "2"], capsys)
    assert code == 1


def test_cli_bench_reproducible(tmp_path, capsys):
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps({"instances": [{"model": "random-dense", "n": 8, "k": 3, "seed": 1,
                                                "epsilon": "0.4"}],
                                 "algorithms": ["greedy", "dense", "sampling"], "seeds": [0, 1]}))
    outs = []
    for name in ("a.csv", "b.csv"):
        code, _ = _run(["bench", "--suite", suite, "--out", tmp_path / name, "--no-timing",
                        "--json", tmp_path / (name + ".json")], capsys)
        assert code == 0
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].count(b"\n") == 1 + 3 * 2
