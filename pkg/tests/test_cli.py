"""Command line: JSON envelope, CSV output, exit codes."""

import io
import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmtorsion.cli import CommandResult, run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def result(*argv):
    code, text = call(*argv)
    assert code == 0, text
    data = json.loads(text)
    assert data["status"] == "ok"
    assert set(data) >= {"command", "inputs", "result", "timing_ms", "status"}
    return data["result"]


def test_classnum_and_nu():
    assert result("classnum", "-47") == 5
    assert result("nu", "-84")["nu"] == 2


def test_raydeg_and_cartan():
    assert result("raydeg", "-7", "7", "--over", "Q") == 42
    assert result("raydeg", "-11", "11", "--over", "Q") == 110
    assert result("cartan", "-4", "5") == 16


def test_hcp():
    assert result("hcp", "-15")["coefficients"] == ["-121287375", "191025", "1"]


def test_degseq():
    assert result("degseq", "-7", "1", "5")["degrees"] == [12]


def test_torsion_with_negative_field_coefficients():
    r = result("torsion", "--field", "-3,0,1", "--kubert", "4/9;1/3")
    assert r["torsion"]["structure"] == "Z/2 x Z/6"


def test_twist_and_iso():
    assert result("twist", "--curve", "0;0;0;0;16", "--elem", "4")["equation"] == "y^2 = x^3 + 1024"
    r = result("iso", "--field", "-3,0,1", "--kubert", "4/9;1/3", "--kubert", "1/9,-1/9;-2/3,1/3")
    assert r["isomorphic"] is True


def test_classify_modes():
    assert result("classify", "--degree", "3", "--odd")["new"] == ["Z/9", "Z/14"]
    assert result("classify", "--degree", "5", "--prime")["non_olson"] == ["Z/11"]
    groups = result("classify", "--degree", "9", "--prime-squared")["groups"]
    assert [g["group"] for g in groups] == ["Z/9", "Z/14", "Z/18", "Z/19", "Z/27"]


def test_tables_and_scan():
    assert [r["row"] for r in result("prime-table", "3")] == [13, 14, 15, 16]
    assert result("verify-table1", "--rows", "13,17")["pass"] is True
    assert result("sg-scan", "20")["members"] == [5, 11, 14, 20]


def test_csv_output():
    code, text = call("--format", "csv", "classnum", "-47")
    assert code == 0 and text.splitlines() == ["result", "5"]
    code, text = call("classify", "--degree", "3", "--odd", "--format", "csv")
    lines = text.splitlines()
    assert lines[0] == "status,group" and "proven,Z/9" in lines


@pytest.mark.parametrize(
    "argv",
    [("classnum", "5"), ("classify", "--degree", "4", "--odd"), ("hcp", "1"), ("torsion", "--kubert", "0;0")],
)
def test_domain_errors_exit_one(argv, capsys):
    code, text = call(*argv)
    assert code == 1
    data = json.loads(text)
    assert data["status"] == "error" and data["message"]


@pytest.mark.parametrize(
    "argv",
    [(), ("classnum",), ("classnum", "x"), ("nosuch",), ("torsion",), ("torsion", "--curve", "1;2")],
)
def test_usage_errors_exit_two(argv, capsys):
    code, _ = call(*argv)
    assert code == 2


@given(st.integers(-5000, -3).filter(lambda d: d % 4 in (0, 1)), st.integers(0, 10**6))
def test_result_round_trip(delta, ms):
    res = CommandResult("classnum", {"delta": delta}, {"h": [1, 2]}, ms)
    assert CommandResult.parse(res.serialize()) == res


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cmtorsion.cli", "classnum", "-23"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == 3
