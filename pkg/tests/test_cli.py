import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from multinormlab.cli import emit_table, rows_to_csv, run
from multinormlab.spaces import VectorTuple


def _run(argv):
    buf = io.StringIO()
    code = run(argv, stdout=buf)
    return code, buf.getvalue()


@pytest.fixture
def tuple_file(tmp_path):
    rng = np.random.default_rng(0)
    x = VectorTuple.of(rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2)), 2, "complex")
    path = tmp_path / "t.json"
    path.write_text(x.dumps())
    return str(path)


@pytest.mark.parametrize("kind", ["min", "max", "pq:1,2", "std:2", "hilbert"])
def test_norm_round_trip(tuple_file, kind):
    code, out = _run(["norm", "--kind", kind, "--input", tuple_file, "--restarts", "4"])
    d = json.loads(out)
    assert code == 0
    assert abs(d["witness_value"] - d["value"]) <= 1e-9 * max(1, d["value"])


def test_min_is_row_maximum(tuple_file):
    x = VectorTuple.from_json(open(tuple_file).read())
    d = json.loads(_run(["norm", "--kind", "min", "--input", tuple_file])[1])
    assert d["value"] == pytest.approx(x.norms().max(), rel=1e-15)


def test_same_seed_byte_identical(tuple_file):
    argv = ["norm", "--kind", "pq:1.5,2", "--input", tuple_file, "--seed", "7", "--restarts", "4"]
    assert _run(argv)[1] == _run(argv)[1]


def test_global_flags_before_command(tuple_file):
    a = _run(["--seed", "3", "norm", "--kind", "max", "--input", tuple_file, "--restarts", "2"])[1]
    b = _run(["norm", "--kind", "max", "--input", tuple_file, "--seed", "3", "--restarts", "2"])[1]
    assert a == b


def test_usage_errors_exit_two(tuple_file, tmp_path):
    assert _run(["bogus"])[0] == 2
    assert _run(["norm", "--kind", "foo", "--input", tuple_file])[0] == 2
    assert _run(["norm", "--kind", "min"])[0] == 2
    assert _run(["norm", "--kind", "min", "--input", str(tmp_path / "missing.json")])[0] == 2
    assert _run(["classify", "--r", "2", "--p1", "2", "--q1", "1", "--vs", "max"])[0] == 2
    assert _run(["classify", "--r", "2", "--p1", "1", "--q1", "2"])[0] == 2
    assert _run(["norm", "--kind", "min", "--input", tuple_file, "--format", "csv"])[0] == 2
    assert _run(["norm", "--kind", "min", "--input", tuple_file, "--restarts", "0"])[0] == 2


def test_classify_output():
    code, out = _run(["classify", "--r", "1.5", "--p1", "1", "--q1", "4/3", "--p2", "2", "--q2", "12/5"])
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "NotEquivalent" and d["citation"] and len(d["points"]) == 2


def test_witness_and_extreme_test(tmp_path):
    code, out = _run(["witness", "--name", "real3"])
    path = tmp_path / "w.json"
    path.write_text(out)
    d = json.loads(_run(["extreme-test", "--input", str(path)])[1])
    assert d["verdict"] == "Extreme"
    assert json.loads(_run(["extreme-test", "--name", "complex4"])[1])["nullspace_dim"] == 0
    d = json.loads(_run(["mu1", "--input", str(path)])[1])
    assert d["value"] == pytest.approx(1.0, abs=1e-12)
    d = json.loads(_run(["classify-triple", "--input", str(path)])[1])
    assert d["class"] == "II"


def test_opnorm_matrix_input(tmp_path):
    path = tmp_path / "A.json"
    path.write_text(json.dumps({"entries": [[1, 2], [3, 4]], "from": 2, "to": 2, "field": "real"}))
    d = json.loads(_run(["opnorm", "--input", str(path)])[1])
    assert d["value"] == pytest.approx(np.linalg.norm([[1, 2], [3, 4]], 2), rel=1e-13)
    d = json.loads(_run(["opnorm", "--input", str(path), "--from", "1", "--to", "1"])[1])
    assert d["value"] == pytest.approx(6.0)


def test_mu_and_phi(tuple_file):
    d = json.loads(_run(["mu", "--p", "2", "--input", tuple_file])[1])
    assert d["certification"] == "Exact"
    d = json.loads(_run(["phi", "--kind", "min", "--r", "2", "--m", "2", "--n", "3"])[1])
    assert d["value"]["value"] == 1.0


def test_delta_table_csv():
    code, out = _run(["table", "--delta", "--r", "1,2", "--nmax", "3", "--grid-pq", "1,2;2,2", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8
    for row in rows:
        assert float(row["rel_gap"]) <= 1e-6
        if row["r"] == "1":
            assert float(row["analytic"]) == pytest.approx(float(row["n"]) ** 0.5, rel=1e-11)


def test_csv_twelve_significant_digits():
    text = rows_to_csv([{"table": "delta", "p": 1.0, "q": 2.0, "r": 2.0, "n": 3, "computed": 1 / 3,
                         "analytic": None, "rel_gap": None, "certification": "Exact", "note": ""}])
    assert "0.333333333333," in text and ",," in text


def test_table_parallel_rows_keep_order():
    serial = emit_table("delta", [1.0], 3, [(1.0, 2.0), (2.0, 2.0)])
    parallel = emit_table("delta", [1.0], 3, [(1.0, 2.0), (2.0, 2.0)], threads=2)
    assert serial == parallel


def test_ratio_table_level_two():
    code, out = _run(["table", "--ratio", "--nmax", "2", "--format", "csv", "--restarts", "4"])
    row = list(csv.DictReader(io.StringIO(out)))[0]
    assert float(row["computed"]) <= 1 + 1e-6


def test_verify_classifier_suite():
    code, out = _run(["verify", "--suite", "classifier"])
    d = json.loads(out)
    assert code == 0 and d["pass"]
    assert all(c["citation"] for s in d["suites"] for c in s["checks"])


def test_verify_witnesses_and_khintchine():
    for suite in ("witnesses", "khintchine"):
        code, out = _run(["verify", "--suite", suite])
        assert code == 0 and json.loads(out)["pass"]


def test_verify_failure_exits_one(monkeypatch):
    from multinormlab import verify

    monkeypatch.setitem(verify.RUNNERS, "khintchine",
                        lambda cfg: [verify.Check("x", 1, 2, False, "deliberately failing check")])
    assert _run(["verify", "--suite", "khintchine"])[0] == 1


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "multinormlab", "witness", "--name", "complex4"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["n"] == 4
