import csv
import io
import json
import subprocess
import sys

import pytest

from wsubreg import weyl
from wsubreg.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main


@pytest.fixture(autouse=True)
def keep_cap(monkeypatch):
    monkeypatch.setattr(weyl, "DEFAULT_CAP", weyl.DEFAULT_CAP)
    monkeypatch.delenv("WSUBREG_THREADS", raising=False)


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_enumerate_json(capsys):
    rc, out, _ = run(capsys, "enumerate", "E6", "--p", "12", "--q", "11", "--format", "json")
    assert rc == EXIT_OK
    rows = json.loads(out)
    assert len(rows) == 7 and sorted(r["h"] for r in rows)[-1] == "0"


def test_enumerate_csv(capsys):
    rc, out, _ = run(capsys, "enumerate", "D4", "--p", "6", "--q", "5", "--format", "csv")
    assert rc == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2 and set(rows[0]) == {"index", "kappa", "eta", "h"}


def test_fusion_group_ring(capsys):
    rc, out, _ = run(capsys, "fusion", "A3", "--p", "5", "--q", "3")
    assert rc == EXIT_OK and "Z[Z/4]" in out


def test_fusion_json(capsys):
    rc, out, _ = run(capsys, "fusion", "D4", "--p", "6", "--q", "5", "--format", "json")
    data = json.loads(out)[0]
    N = data["N"]
    tau = 1 - data["identity"]
    assert rc == EXIT_OK and len(N) == 2 and N[tau][tau] == [1, 1]


def test_smatrix_and_qdims(capsys, tmp_path):
    target = tmp_path / "s.json"
    rc, _, _ = run(capsys, "smatrix", "D4", "--p", "6", "--q", "5", "--format", "json", "--out", str(target))
    assert rc == EXIT_OK
    data = json.loads(target.read_text())
    assert len(data["float"]) == 2
    rc, out, _ = run(capsys, "qdims", "D4", "--p", "6", "--q", "5", "--format", "json")
    vals = sorted(r["qdim"] for r in json.loads(out))
    assert rc == EXIT_OK and vals == pytest.approx([(1 - 5 ** 0.5) / 2, 1])


def test_huge_weyl_group_refused(capsys):
    rc, out, err = run(capsys, "smatrix", "E8", "--p", "31", "--q", "27")
    assert rc == EXIT_INPUT
    assert "# 12 labels" in out and "--allow-huge" in err


def test_cap_flag(capsys):
    rc, _, err = run(capsys, "smatrix", "D4", "--p", "6", "--q", "5", "--cap", "10")
    assert rc == EXIT_INPUT and "--allow-huge" in err


@pytest.mark.parametrize("argv", [["enumerate", "E6", "--p", "12", "--q", "8"],
                                  ["enumerate", "E6", "--p", "11", "--q", "10"],
                                  ["enumerate", "X3", "--p", "5", "--q", "3"],
                                  ["enumerate", "B3", "--p", "7", "--q", "5"]])
def test_invalid_input(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == EXIT_INPUT and err.startswith("error:")


def test_non_dynkin_grading_reports_failure(capsys):
    rc, _, err = run(capsys, "fusion", "A2", "--p", "5", "--q", "2")
    assert rc == EXIT_FAIL and "not the Dynkin grading" in err


def test_verify_and_report(capsys):
    rc, out, _ = run(capsys, "verify", "e6")
    assert rc == EXIT_OK and out.strip().endswith("checks passed")
    rc, out, _ = run(capsys, "verify", "table")
    passed, total = out.strip().splitlines()[-1].split()[0].split("/")
    assert rc == EXIT_OK and passed == total and out.count("table ") >= 24
    rc, out, _ = run(capsys, "report", "--format", "json")
    rows = json.loads(out)
    assert rc == EXIT_OK and len(rows) == 24


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wsubreg.cli", "enumerate", "A3", "--p", "5", "--q", "3"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and proc.stdout.count("h=") == 4
