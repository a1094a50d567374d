import io
import json
import subprocess
import sys

import pytest

from qschub.bases import BasisExpansion
from qschub.cli import run
from qschub.poly import parse


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_uv():
    assert call("uv", "--word", "r1 t1 t2 t1 r2") == (0, "u=21435 v=51243\n", "")


def test_ds_both_modes():
    code, out, _ = call("ds", "-f", "x1*x2", "-n", "3", "--mode", "both")
    assert code == 0 and out.split() == ["1", "1"]
    code, out, _ = call("ds", "-q", "-f", "x1*x2", "-n", "3")
    assert code == 0 and parse(out.strip(), q=True).eval_q(1) == 1


def test_verify_relations():
    code, out, _ = call("verify", "relations", "--max-n", "5", "--seed", "7")
    assert code == 0 and out.startswith("relations: PASS")


def test_output_is_deterministic():
    a = call("verify", "gz", "--max-n", "3", "--seed", "3")
    b = call("verify", "gz", "--max-n", "3", "--seed", "3")
    assert a == b and a[0] == 0


def test_matrix_and_trim():
    code, out, _ = call("matrix", "--word", "r1 t1 t1")
    assert out == "* 1 0\n* 0 1\n1 0 0\n"
    code, out, _ = call("trim", "--forest", "{1,2,3}:^^...", "-n", "3")
    assert out.split("\n")[0] == "r1 t1 t1"


def test_lr_forms():
    assert call("lr", "-u", "2341", "-w", "15243", "-v", "263415")[1] == "1\n"
    assert call("lr", "--word", "r1 t1 t1", "-w", "231")[0] == 0


def test_locate():
    assert call("locate", "--lambda", "3,2,1", "--point", "5/2,2,3/2")[1] == "r1 t1 t1\n"


@pytest.mark.parametrize("basis", ["schubert", "forest", "fundamental"])
def test_expand_json_roundtrip(basis):
    f = "x1^2 + x1*x2 + x2^2"
    code, out, _ = call("expand", "--basis", basis, "-f", f, "-n", "2", "--json")
    assert code == 0
    exp = BasisExpansion.from_json(out)
    assert exp.basis == basis and exp.terms
    code, text, _ = call("expand", "--basis", basis, "-f", f, "-n", "2")
    assert text.strip() == str(exp)


def test_gessel_matches_fundamental_expand():
    a = call("gessel", "-f", "x1+x2+x3", "-n", "3")
    b = call("expand", "--basis", "fundamental", "-f", "x1+x2+x3", "-n", "3")
    assert a == b and a[1] == "F[3:(1)]\n"


@pytest.mark.parametrize("argv, code", [
    (["uv", "--word", "r1 q2"], 1),
    (["ds", "-f", "x1 +* x2", "-n", "2"], 1),
    (["nonsense"], 1),
    (["uv", "--word", "r1 t2"], 2),
    (["ds", "-f", "x3", "-n", "2"], 2),
    (["locate", "--lambda", "3,2,1", "--point", "9,0,-3"], 2),
    (["gessel", "-f", "x2", "-n", "2"], 2),
])
def test_exit_codes(argv, code):
    got, out, err = call(*argv)
    assert got == code and err


def test_json_payload_shapes():
    code, out, _ = call("--json", "uv", "--word", "r1 t1 t1 r2 t4")
    assert json.loads(out) == {"u": "32415", "v": "52341", "word": "r1 t1 t1 r2 t4"}
    code, out, _ = call("verify", "ds", "--max-n", "3", "--json")
    (entry,) = json.loads(out)
    assert entry["ok"] and entry["suite"] == "ds"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qschub", "uv", "--word", "r1 t1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "u=12 v=21\n"
