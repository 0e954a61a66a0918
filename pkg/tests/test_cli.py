import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from qac import cli, qkernel
from qac.errors import ConfigError
from qac.identities import generating
from qac.polynomials import ascu_sum
from qac.qkernel import qfact
from qac.scalars import QContext


def run_cli(*args):
    env = {k: v for k, v in os.environ.items() if k != "QAC_CONFIG"}
    return subprocess.run(
        [sys.executable, "-m", "qac", *args], capture_output=True, text=True, env=env, timeout=300
    )


def out(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


@pytest.fixture(autouse=True)
def no_env_config(monkeypatch):
    monkeypatch.delenv("QAC_CONFIG", raising=False)


# -- eval --------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["eval", "U", "1", "x=1", "y=1/2", "a=1", "--q", "1/2"], "-1/2"),
        (["eval", "P", "0"], "1"),
        (["eval", "g", "1", "a=1", "--q", "1/2"], "2"),
        (["eval", "U", "2", "x=1", "y=1", "a=1"], "1/2"),
        (["eval", "h", "1", "x=2/3", "y=1/5"], "22/15"),
        (["eval", "u", "1", "x=3", "a=1/5"], "9/5"),
        (["eval", "phi", "num=2", "den=0", "arg=1/4"], "3/2"),
    ],
)
def test_eval(capsys, argv, expected):
    code, res = out(capsys, *argv)
    assert code == 0 and res.out.strip() == expected


def test_eval_symbolic_cauchy(capsys):
    code, res = out(capsys, "eval", "P", "2")
    assert code == 0 and res.out.strip() == "x^2 - 3/2*x*y + 1/2*y^2"


def test_eval_numeric(capsys):
    code, res = out(capsys, "eval", "phi", "num=1/3", "arg=2/5", "--mode", "numeric")
    assert code == 0 and res.out.strip() == "1.937755104782723946497136434227089"


def test_eval_missing_parameter(capsys):
    code, res = out(capsys, "eval", "U", "2", "x=1")
    assert code == 2 and "error" in res.err


# -- series ------------------------------------------------------------------------


def test_series_denominator(capsys):
    code, res = out(capsys, "series", "den:t", "--order", "3")
    assert code == 0
    assert res.out.splitlines() == ["0: 1", "1: 2", "2: 8/3", "3: 64/21"]


def test_series_generating_product(capsys):
    code, res = out(capsys, "series", "num:at num:yt den:xt", "a=1/3", "y=1/2", "x=1", "--order", "2")
    assert code == 0
    rows = dict(line.split(": ") for line in res.out.splitlines())
    ctx = QContext("1/2")
    expected = ascu_sum(2, {"x": Fraction(1), "y": Fraction(1, 2), "a": Fraction(1, 3)}, ctx) / qfact(2, ctx)
    assert Fraction(rows["2"]) == expected


def test_series_empty(capsys):
    code, res = out(capsys, "series", "")
    assert code == 0 and res.out.splitlines() == ["0: 1"]


def test_series_bad_spec(capsys):
    code, res = out(capsys, "series", "wat:t")
    assert code == 2


# -- run ---------------------------------------------------------------------------


def test_run_glob_selects_gf(capsys):
    code, res = out(capsys, "run", "--suite", "GF-*", "--jobs", "1")
    assert code == 0
    report = json.loads(res.out)
    assert [c["id"] for c in report["checks"]] == ["GF-H", "GF-P", "GF-U"]
    assert report["totals"] == {"passed": 3, "failed": 0, "skipped": 0}


def test_report_schema(capsys):
    code, res = out(capsys, "run", "--suite", "REL-g", "--jobs", "1", "--no-timing")
    report = json.loads(res.out)
    assert list(report) == ["config", "checks", "totals"]
    assert list(report["checks"][0]) == ["id", "status", "max_deviation", "params", "elapsed_ms"]
    assert list(report["totals"]) == ["passed", "failed", "skipped"]


def test_run_bad_q():
    res = run_cli("run", "--q", "3/2")
    assert res.returncode == 2
    assert "q must lie in (0,1)" in res.stderr


def test_run_bad_format_value(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["run", "--format", "xml"])
    assert exc.value.code == 2


def test_run_fail_exit_code(monkeypatch, capsys):
    real = qkernel.phi
    monkeypatch.setattr(generating, "phi", lambda *a, **k: real(*a, **k) - 1)
    code, res = out(capsys, "run", "--suite", "MEHLER-TERM", "--jobs", "1", "--format", "text")
    assert code == 1
    assert res.out.startswith("FAIL")


def test_run_text_and_csv(capsys, tmp_path):
    code, res = out(capsys, "run", "--suite", "LINEARIZE", "--format", "text", "--jobs", "1")
    assert code == 0 and res.out.startswith("PASS    LINEARIZE")
    path = tmp_path / "r.csv"
    code, _ = out(capsys, "run", "--suite", "LINEARIZE", "--format", "csv", "--report", str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "id,status,max_deviation,params,elapsed_ms"
    assert lines[1].startswith("LINEARIZE,Pass,0,")


def test_deterministic_json():
    args = ("run", "--suite", "GF-*,LEM-*,PROD-2", "--seed", "7", "--no-timing")
    first = run_cli(*args)
    second = run_cli(*args, "--jobs", "1")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_config_file_and_override(tmp_path, capsys, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"q": "1/3", "suite": "REL-*", "seed": 4, "jobs": 1}))
    code, res = out(capsys, "run", "--config", str(path), "--no-timing")
    report = json.loads(res.out)
    assert code == 0 and report["config"]["q"] == "1/3" and report["config"]["seed"] == 4
    assert len(report["checks"]) == 3
    monkeypatch.setenv("QAC_CONFIG", str(path))
    code, res = out(capsys, "run", "--q", "2/5", "--no-timing")
    report = json.loads(res.out)
    assert report["config"]["q"] == "2/5" and report["config"]["suite"] == "REL-*"


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": "blue"}))
    with pytest.raises(ConfigError):
        cli.load_config(str(bad))
    with pytest.raises(ConfigError):
        cli.load_config(str(tmp_path / "missing.json"))
    with pytest.raises(ConfigError):
        cli.RunConfig(order=0).validate()


def test_list(capsys):
    code, res = out(capsys, "list", "--suite", "GF-*")
    assert code == 0 and len(res.out.splitlines()) == 3
