import csv
import io
import subprocess
import sys

import pytest

from ramseyq.cli import BENCH_FIELDS, main
from ramseyq.structures import complete_graph, cycle_graph, format_dimacs, load_graph, parse_model


@pytest.fixture
def k4(tmp_path):
    p = tmp_path / "k4.dimacs"
    p.write_text(format_dimacs(complete_graph(4)))
    return str(p)


@pytest.fixture
def c5(tmp_path):
    p = tmp_path / "c5.dimacs"
    p.write_text(format_dimacs(cycle_graph(5)))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_true(capsys, k4):
    code, out, _ = run(capsys, "eval", "--graph", k4, "--fn", "3", "--loops-free", "--witness")
    assert code == 0
    assert "RESULT true" in out and "WITNESS 0 1 2" in out and "STRATEGY EnumerateSmall" in out


def test_eval_false(capsys, c5):
    code, out, _ = run(capsys, "eval", "--graph", c5, "--fn", "ceil(log2(n))", "--loops-free")
    assert code == 1 and "RESULT false" in out


def test_eval_rejects_n_plus_two(capsys, c5):
    code, _, err = run(capsys, "eval", "--graph", c5, "--fn", "n + 2")
    assert code == 2 and "n + 1" in err


def test_eval_syntax_error(capsys, c5):
    code, _, err = run(capsys, "eval", "--graph", c5, "--fn", "ceil(n")
    assert code == 2 and "column" in err


def test_eval_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "eval", "--graph", str(tmp_path / "nope"), "--fn", "1")
    assert code == 2


def test_eval_malformed_file(capsys, tmp_path):
    p = tmp_path / "bad.dimacs"
    p.write_text("p edge 2 1\ne 1 3\n")
    code, _, err = run(capsys, "eval", "--graph", str(p), "--fn", "1", "--loops-free")
    assert code == 2 and ":2:" in err


def test_literal_graph_reading_has_no_eligible_vertices(capsys, k4):
    code, out, _ = run(capsys, "eval", "--graph", k4, "--fn", "1")
    assert code == 1


def test_eval_model(capsys, tmp_path):
    p = tmp_path / "m.model"
    p.write_text("n 3\nS 0 0\nS 2 2\nS 0 2\nS 2 0\n")
    code, out, _ = run(capsys, "eval", "--model", str(p), "--fn", "2", "--witness")
    assert code == 0 and "WITNESS 0 2" in out


def test_eval_budget_unknown(capsys, tmp_path):
    from ramseyq.structures import gnp

    p = tmp_path / "g.dimacs"
    p.write_text(format_dimacs(gnp(200, 0.9, 3)))
    code, out, _ = run(capsys, "eval", "--graph", str(p), "--loops-free", "--fn", "60", "--budget-ms", "1")
    assert code == 2 and "RESULT unknown" in out


@pytest.mark.parametrize(
    "fn, expected",
    [
        ("ceil(1/2 * n)", ["case Case3_LinearButFarFromN", "intractable LinearNotCLB_ETH (assuming ETH)"]),
        ("n - 2*ceil(log2(n))", ["case Case4_NearN", "c 2", "verdict tractable"]),
        ("5", ["case Case1_Bounded", "c 5", "verdict tractable"]),
    ],
)
def test_classify(capsys, fn, expected):
    code, out, _ = run(capsys, "classify", "--fn", fn)
    assert code == 0
    for line in expected:
        assert line in out


def test_classify_bad_fn(capsys):
    assert run(capsys, "classify", "--fn", "log2(n)")[0] == 2


def test_probe(capsys):
    assert run(capsys, "probe", "--fn", "ceil(sqrt(n))", "--n", "9")[1].strip() == "3"
    assert run(capsys, "probe", "--fn", "n + 1", "--n", "4")[1].strip() == "> 4"


def test_reduce_writes_instance_and_params(capsys, tmp_path):
    src = tmp_path / "tri.dimacs"
    src.write_text("p edge 4 3\ne 1 2\ne 2 3\ne 1 3\n")
    out = tmp_path / "out.dimacs"
    code, stdout, _ = run(capsys, "reduce", "sublinear", "--graph", str(src), "--loops-free",
                          "--fn", "ceil(log2(n))", "--k", "3", "--out", str(out))
    assert code == 0
    g = load_graph(out)
    assert g.size == 5 and g.edge_count() == 3
    params = (tmp_path / "out.dimacs.params").read_text()
    assert "k_prime 3" in params and "q 5" in stdout


def test_reduce_pad_and_linear(capsys, tmp_path):
    src = tmp_path / "e4.dimacs"
    src.write_text("p edge 4 0\n")
    code, out, err = run(capsys, "reduce", "pad", "--graph", str(src), "--loops-free", "--fn", "ceil(sqrt(n))", "--b", "1")
    assert code == 0 and "p edge 6" in out and "delta 2" in err
    code, out, err = run(capsys, "reduce", "linear", "--graph", str(src), "--loops-free", "--fn", "ceil(1/2 * n)", "--k", "3")
    assert code == 0 and "p edge 5 0" in out and "ell 1" in err


def test_reduce_precondition_failure(capsys, k4):
    code, _, err = run(capsys, "reduce", "linear", "--graph", k4, "--loops-free", "--fn", "ceil(log2(n))", "--k", "2")
    assert code == 2 and "Case3" in err


def test_oracle_check_passes(capsys):
    code, out, _ = run(capsys, "oracle-check", "--max-n", "8", "--trials", "20", "--seed", "42")
    assert code == 0 and out.startswith("OK")


def test_oracle_check_reports_violation(capsys, tmp_path, monkeypatch):
    import ramseyq.cli as cli
    from ramseyq.solvers import Certificate

    def wrong(g, f, config, validate=False):
        return Certificate(True, (), "Broken", f(g.size))

    monkeypatch.setattr(cli, "eval_ramsey", wrong)
    failing = tmp_path / "fail.model"
    code, out, _ = run(capsys, "oracle-check", "--max-n", "4", "--trials", "5", "--fn", "n", "--out", str(failing))
    assert code == 3 and "VIOLATION" in out
    m = parse_model(failing.read_text())
    assert m.size >= 1


def test_gen_is_deterministic(capsys, tmp_path):
    a = run(capsys, "gen", "--model", "gnp", "--n", "12", "--p", "0.5", "--seed", "7")[1]
    b = run(capsys, "gen", "--model", "gnp", "--n", "12", "--p", "0.5", "--seed", "7")[1]
    assert a == b and "p edge 12" in a
    p = tmp_path / "g.dimacs"
    p.write_text(a)
    first = run(capsys, "eval", "--graph", str(p), "--loops-free", "--fn", "3", "--witness")
    second = run(capsys, "eval", "--graph", str(p), "--loops-free", "--fn", "3", "--witness")
    assert first == second


def test_gen_planted_and_relation(capsys):
    out = run(capsys, "gen", "--family", "planted", "--n", "15", "--k", "6", "--seed", "1")[1]
    assert "p edge 15" in out
    out = run(capsys, "gen", "--family", "relation", "--n", "5", "--seed", "1")[1]
    assert parse_model(out).size == 5


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--fn", "n - 2*ceil(log2(n))", "--family", "complete",
                       "--n-min", "16", "--n-max", "2000", "--n-step", "0")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert tuple(rows[0].keys()) == BENCH_FIELDS
    assert [int(r["n"]) for r in rows] == [16, 32, 64, 128, 256, 512, 1024]
    assert all(r["strategy"] == "VertexCoverNearN" and r["outcome"] == "true" for r in rows)


def test_bench_row_count(capsys):
    out = run(capsys, "bench", "--fn", "3", "--fn", "ceil(sqrt(n))", "--family", "gnp",
              "--n-min", "4", "--n-max", "12", "--n-step", "4", "--trials", "2")[1]
    assert len(out.strip().splitlines()) == 1 + 3 * 2 * 2


def test_module_entry_point(k4):
    proc = subprocess.run([sys.executable, "-m", "ramseyq", "eval", "--graph", k4, "--fn", "3", "--loops-free"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "RESULT true" in proc.stdout
