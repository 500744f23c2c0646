import csv
import io
import json
from fractions import Fraction as F

import pytest

from rmtmoments import physics
from rmtmoments.cli import COLUMNS, parse_record, run
from rmtmoments.ensembles import laguerre
from rmtmoments.exactnum import ExactReal
from rmtmoments.moments import moment


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_delay_example():
    code, out, _ = _run("delay", "--beta", "2", "--n", "3", "--k", "1")
    assert code == 0
    assert json.loads(out)["value_rational"] == "1/1"


def test_transmission_example():
    code, out, _ = _run("transmission", "--beta", "2", "--delta", "0", "--m", "2", "--n", "1", "--k", "1")
    assert code == 0
    assert json.loads(out)["value_rational"] == "2/3"


def test_divergent_moment_exit_code():
    code, out, _ = _run("moment", "--ensemble", "laguerre", "--beta", "2", "--b", "0", "--n", "2", "--k", "-3")
    rec = json.loads(out)
    assert code == 2 and rec["diverges"] is True
    assert rec["value_rational"] is None and rec["value_float"] is None


@pytest.mark.parametrize("argv", [
    ["moment", "--ensemble", "foo", "--beta", "2", "--n", "2", "--k", "1"],
    ["moment", "--ensemble", "gaussian", "--beta", "3", "--n", "2", "--k", "1"],
    ["moment", "--ensemble", "gaussian", "--beta", "1", "--n", "3", "--k", "2"],
    ["transmission", "--beta", "2", "--delta", "0", "--m", "1", "--n", "2", "--k", "1"],
    ["delay", "--beta", "2", "--n", "x", "--k", "1"],
    [],
])
def test_invalid_parameters_exit_3(argv):
    code, out, err = _run(*argv)
    assert code == 3 and out == "" and err


def test_json_round_trip():
    code, out, _ = _run("moment", "--ensemble", "laguerre", "--beta", "4", "--b", "3/2", "--n", "2", "--k", "-1")
    assert code == 0
    assert parse_record(json.loads(out)) == moment(laguerre(4, 2, F(3, 2)), -1).exact
    code, out, _ = _run("moment", "--ensemble", "gaussian", "--beta", "2", "--n", "1", "--k", "0")
    assert parse_record(json.loads(out)) == ExactReal(1)


def test_csv_output():
    code, out, _ = _run("cumulants", "--beta", "2", "--delta", "0", "--m", "1", "--n", "1", "--order", "2",
                        "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert out.splitlines()[0] == ",".join(COLUMNS)
    assert [r["value_rational"] for r in rows] == ["1/2", "1/6"]
    code, out, _ = _run("moment", "--ensemble", "laguerre", "--beta", "2", "--b", "0", "--n", "2", "--k", "-3",
                        "--format", "csv")
    assert code == 2 and out.splitlines()[0] == ",".join(COLUMNS)


def test_limits():
    code, out, _ = _run("limit", "--kind", "catalan", "--k", "1")
    assert json.loads(out)["value_rational"] == "1/2"
    code, out, _ = _run("limit", "--kind", "catalan", "--k", "2", "--ratio", "2")
    assert parse_record(json.loads(out)) == physics.limit_catalan(2, 2)
    code, out, _ = _run("limit", "--kind", "schroeder", "--k", "3")
    assert json.loads(out)["value_rational"] == "6/1"


def test_verify_duality_passes():
    code, out, _ = _run("verify", "--suite", "duality")
    recs = json.loads(out)
    assert code == 0 and len(recs) > 20 and all(r["passed"] for r in recs)


def test_verify_detects_sign_flip(monkeypatch):
    original = physics._t2_display
    monkeypatch.setattr(physics, "_t2_display", lambda *a: -original(*a))
    code, out, _ = _run("verify", "--suite", "duality")
    assert code == 4
    assert any(not r["passed"] for r in json.loads(out))
