import io
import json
import subprocess
import sys

import pytest

from webcat import cli
from webcat.normalizer import NormalForm
from webcat.suites import SuiteReport


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_normalize_bigon():
    code, out, _ = call("normalize", "--expr", "split(1,1);merge(1,1)")
    assert code == 0
    data = json.loads(out)
    assert data["terms"] == [{"coeff": "2", "A": [[2]], "P": [[[]]]}]


def test_normalize_cyclotomic():
    code, out, _ = call("normalize", "--expr", "dot(1);dot(1)", "--level", "2", "--u", "0,1")
    assert code == 0
    assert json.loads(out)["terms"] == [{"coeff": "1", "A": [[1]], "P": [[[1]]]}]
    code, out, _ = call("normalize", "--expr", "dot(1)", "--level", "1", "--u", "3/4", "--ring", "Q")
    assert json.loads(out)["terms"] == [{"coeff": "3/4", "A": [[1]], "P": [[[]]]}]


def test_dim_level_two():
    code, out, _ = call("dim", "--source", "1,1", "--target", "1,1", "--level", "2")
    assert code == 0
    assert json.loads(out)["total"] == 8


def test_basis_stream_matches_dim():
    code, out, _ = call("basis", "--source", "2,1", "--target", "1,2", "--max-degree", "2")
    assert code == 0
    items = json.loads(out)
    _, dim_out, _ = call("dim", "--source", "2,1", "--target", "1,2", "--max-degree", "2")
    assert len(items) == json.loads(dim_out)["total"]
    assert all(set(e) == {"A", "P"} for e in items)


def test_compose_order():
    code, out, _ = call("compose", "--lhs", "split(1,1)", "--rhs", "merge(1,1)")
    assert code == 0
    _, direct, _ = call("normalize", "--expr", "split(1,1);merge(1,1)")
    assert out == direct


def test_oracle_compare():
    code, out, _ = call("oracle-compare", "--expr", "cross(1,1);dot(1)@id(1)", "--seed", "3")
    data = json.loads(out)
    assert code == 0 and data["equal"]
    assert data["normalize"] == data["oracle"]


def test_oracle_disagreement_exit(monkeypatch):
    def wrong(m, seed=0):
        return NormalForm(m.source, m.target, {})
    monkeypatch.setattr(cli, "oracle_normalize", wrong)
    code, out, _ = call("oracle-compare", "--expr", "dot(1)")
    assert code == 4
    assert json.loads(out)["equal"] is False


def test_check_exit_codes(monkeypatch):
    code, out, _ = call("check", "--suite", "basis", "--max-size", "2")
    assert code == 0
    assert out.splitlines()[-1].startswith("basis:")

    def failing(name, max_size, seed=0):
        rep = SuiteReport(name)
        rep.record(False, "R3[a=1,b=1] (full) LHS-RHS is nonzero")
        return rep
    monkeypatch.setattr(cli, "run_suite", failing)
    code, out, _ = call("check", "--suite", "relations")
    assert code == 3
    assert "FAIL R3[a=1,b=1]" in out


@pytest.mark.parametrize("argv", [
    ("normalize", "--expr", "split(1,1;merge(1,1)"),
    ("normalize", "--expr", "bogus(1)"),
    ("dim", "--source", "1,x", "--target", "2", "--max-degree", "1"),
    ("dim", "--source", "1,1", "--target", "2"),
    ("normalize", "--expr", "dot(1)", "--level", "2", "--u", "1"),
    ("normalize", "--expr", "dot(1)", "--u", "1"),
    ("frobnicate",),
    (),
])
def test_usage_and_parse_errors(argv):
    code, _, err = call(*argv)
    assert code == 1
    assert err


@pytest.mark.parametrize("argv", [
    ("normalize", "--expr", "merge(1,1);merge(1,1)"),
    ("normalize", "--expr", "dot(1) + dot(2)"),
    ("compose", "--lhs", "split(1,1)", "--rhs", "dot(2)"),
])
def test_boundary_errors(argv):
    code, _, err = call(*argv)
    assert code == 2
    assert "boundary" in err


def test_ring_z_refuses_fraction():
    code, _, err = call("normalize", "--expr", "1/2 * dot(1)")
    assert code == 1
    code, out, _ = call("normalize", "--expr", "1/2 * dot(1)", "--ring", "Q")
    assert code == 0 and '"coeff":"1/2"' in out


def test_output_is_byte_stable():
    argv = ("normalize", "--expr", "cross(2,1);merge(1,2);wdot(3,1);split(2,1)")
    first = call(*argv)[1]
    assert all(call(*argv)[1] == first for _ in range(3))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "webcat", "dim", "--source", "2", "--target", "2",
                           "--level", "2"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["by_degree"] == [1, 1, 1]
