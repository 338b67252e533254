import json

import pytest

from rbsystems import io
from rbsystems.algebra import matrix_algebra, truncated_poly
from rbsystems.algebra import Operator
from rbsystems.cli import CHECKS, DERIVES, main
from rbsystems.ybpair import matrix_unit_pair


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(io.dumps(doc))
        return str(path)

    return write


def _power(A, k):
    zk = A.one
    for _ in range(k):
        zk = zk * A.e(1)
    return Operator.right_mult(zk)


def test_check_rb_system_pass(capsys, files):
    A = truncated_poly(4)
    alg = files("a.json", io.algebra_to_json(A))
    R = files("R.json", io.operator_to_json(_power(A, 1)))
    S = files("S.json", io.operator_to_json(_power(A, 3)))
    code, doc = run(capsys, "check", "rb-system", "--algebra", alg, "--R", R, "--S", S)
    assert code == 0 and doc["verdict"] == "pass" and doc["command"] == "check rb-system"


def test_check_rb_system_fail(capsys, files):
    A = matrix_algebra(2)
    alg = files("a.json", io.algebra_to_json(A))
    I = files("I.json", io.operator_to_json(Operator.identity(A)))
    code, doc = run(capsys, "check", "rb-system", "--algebra", alg, "--R", I, "--S", I)
    assert code == 1
    cx = doc["sub_reports"][0]["counterexample"]
    assert cx["basis"] == ["e11", "e11"] and cx["lhs"] == "e11" and cx["rhs"] == "2*e11"


def test_check_yb_pair_and_builtin(capsys, files):
    P = matrix_unit_pair(2, 2, 1, 3)
    alg = files("a.json", io.algebra_to_json(P.algebra))
    r = files("r.json", io.tensor2_to_json(P.r))
    s = files("s.json", io.tensor2_to_json(P.s))
    assert run(capsys, "check", "yb-pair", "--algebra", alg, "--r", r, "--s", s)[0] == 0
    assert run(capsys, "check", "associative", "--algebra", "builtin:matrix_algebra(3)")[0] == 0


def test_derive_writes_under_out(capsys, files, tmp_path):
    P = matrix_unit_pair(2, 2, 1, 3)
    alg = files("a.json", io.algebra_to_json(P.algebra))
    r = files("r.json", io.tensor2_to_json(P.r))
    s = files("s.json", io.tensor2_to_json(P.s))
    out = tmp_path / "out"
    code, doc = run(capsys, "derive", "rb-from-pair", "--algebra", alg, "--r", r, "--s", s, "--out", str(out))
    assert code == 0 and doc["outputs"]
    for name in doc["outputs"]:
        assert (out / name).exists()
    code, doc = run(capsys, "derive", "rb-from-pair", "--algebra", alg, "--r", r, "--s", s)
    assert code == 0 and "derived" in doc


def test_derive_idempotent_family(capsys, files):
    A = matrix_algebra(2)
    alg = files("a.json", io.algebra_to_json(A))
    e = files("e.json", io.element_to_json(A.e(0)))
    code, doc = run(capsys, "derive", "idempotent-family", "--algebra", alg, "--e", e, "--kappa", "0")
    assert code == 0
    R = next(v for k, v in doc["derived"].items() if k.startswith("R"))
    assert R["matrix"][0] == ["1", "0", "0", "0"] and R["matrix"][3] == ["0", "0", "0", "0"]


def test_search_command(capsys):
    code, doc = run(capsys, "search", "idempotents", "--algebra", "builtin:matrix_algebra(2)", "--field", "GF(2)")
    assert code == 0 and len(doc["derived"]["solutions.json"]["solutions"]) == 8
    code, doc = run(capsys, "search", "yb_pairs", "--algebra", "builtin:matrix_algebra(3)", "--field", "GF(2)")
    assert code == 2 and doc["verdict"] == "error"


def test_errors_exit_two(capsys, files):
    bad = files("bad.json", {"field": {"kind": "Rationals"}, "dim": 1, "mul": [[1, 1, 1, "1/0"]]})
    code, doc = run(capsys, "check", "associative", "--algebra", bad)
    assert code == 2 and "at $.mul[0][3]" in doc["details"]["error"]
    code, doc = run(capsys, "check", "rb-system", "--algebra", "builtin:matrix_algebra(2)")
    assert code == 2 and "--R" in doc["details"]["error"]
    code, _ = run(capsys, "check", "associative", "--algebra", "builtin:matrix_algebra(2)", "--field", "GF(4)")
    assert code == 2


def test_precondition_error_exit_two(capsys, files):
    A = matrix_algebra(2)
    alg = files("a.json", io.algebra_to_json(A))
    I = files("I.json", io.operator_to_json(Operator.identity(A)))
    code, doc = run(capsys, "derive", "dendriform", "--algebra", alg, "--R", I, "--S", I)
    assert code == 2 and doc["sub_reports"][0]["verdict"] == "fail"


def test_jackson_check(capsys):
    code, doc = run(capsys, "check", "jackson", "--max-deg", "4")
    assert code == 0


def test_gallery_list_and_unknown(capsys):
    code, doc = run(capsys, "gallery", "list")
    assert code == 0 and "jackson" in doc["entries"]
    code, doc = run(capsys, "gallery", "run", "nope")
    assert code == 2


def test_gallery_run_one(capsys, tmp_path):
    code, doc = run(capsys, "gallery", "run", "counital", "--out", str(tmp_path))
    assert code == 0 and (tmp_path / "report.json").exists()


def test_command_lists_are_complete():
    assert len(CHECKS) == len(set(CHECKS)) and len(DERIVES) == len(set(DERIVES))
