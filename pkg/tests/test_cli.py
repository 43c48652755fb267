import csv
import io
import math
import subprocess
import sys

import pytest

from weylbounds import cli, specfun
from weylbounds.exceptions import ConvergenceError


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_constants_dim3():
    code, text = run("constants", "--dim", "3")
    assert code == 0
    assert "H=3.000000000000" in text.splitlines()


def test_bound_value():
    code, text = run("bound", "--id", "NEW1", "--dim", "2", "--k", "1")
    assert code == 0
    assert float(text.split("=")[1]) == pytest.approx(5.133, abs=5e-4)


def test_bound_counting_with_extra_inputs():
    code, text = run("bound", "--id", "polya_weyl_term", "--dim", "2", "--lam", "49.3480220054", "--volume", "1")
    assert code == 0
    assert float(text.split("=")[1]) == pytest.approx(3.92699, abs=1e-5)


def test_bound_missing_input_is_usage_error(capsys):
    code, _ = run("bound", "--id", "LIYAU_UPPER", "--dim", "2", "--lam", "10")
    assert code == 2
    assert "usage" in capsys.readouterr().err


def test_tables_table2_prints_six_pass_lines():
    code, text = run("tables", "--id", "table2")
    assert code == 0
    assert sum(line.startswith("PASS") for line in text.splitlines()) == 6


def test_tables_reports_anomalies():
    code, text = run("tables", "--id", "table1")
    assert code == 0
    assert "paper value inconsistent with formula; derived value 0.00623805" in text


def test_spectrum_stdout_and_csv(tmp_path):
    code, text = run("spectrum", "--domain", "box", "--sides", "1", "1", "--count", "3")
    assert code == 0
    vals = [float(v) for v in text.split()]
    assert vals == pytest.approx([19.7392088022, 49.3480220054, 49.3480220054])
    path = tmp_path / "s.csv"
    code, _ = run("spectrum", "--domain", "ball", "--dim", "3", "--count", "4", "--csv", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# domain=ball[n=3,r=1]/dirichlet")
    assert len(lines) == 2 + 4


def test_trimmed_csv_cutoff_respects_degeneracy(tmp_path):
    from weylbounds import spectra

    path = tmp_path / "s.csv"
    # count=2 cuts the double eigenvalue 5 pi^2, so the list is complete only up to 2 pi^2
    run("spectrum", "--domain", "box", "--sides", "1", "1", "--count", "2", "--csv", str(path))
    meta, values = spectra.read_spectrum_csv(path)
    assert float(meta["cutoff"]) == pytest.approx(values[0], rel=1e-11)
    run("spectrum", "--domain", "box", "--sides", "1", "1", "--count", "3", "--csv", str(path))
    meta, values = spectra.read_spectrum_csv(path)
    # nothing is cut here; the next eigenvalue is 8 pi^2
    assert values[2] <= float(meta["cutoff"]) < 8 * math.pi ** 2


def test_spectrum_ball_neumann_rejected():
    code, _ = run("spectrum", "--domain", "ball", "--bc", "neumann", "--count", "2")
    assert code == 2


def test_curve_csv():
    code, text = run("curve", "--dim", "2", "--kmax", "32")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 32
    assert float(rows[30]["new4"]) == pytest.approx(122.334, abs=1e-3)


def test_audit_exit_zero(tmp_path):
    path = tmp_path / "audit.csv"
    code, text = run("audit", "--csv", str(path))
    assert code == 0
    assert "0 violations" in text
    with open(path) as fh:
        header = next(csv.reader(fh))
    assert header == ["bound_id", "domain", "parameter", "bound_value", "oracle_value", "direction", "satisfied", "slack"]


def test_audit_violation_exit_one(monkeypatch):
    from weylbounds.verify import audit

    real = audit.run_suite

    def tampered(*args, **kwargs):
        reports = real(*args, **kwargs)
        r = reports[0]
        bad = audit.AuditReport(r.bound_id, r.domain, r.parameter, r.oracle_value - 1, r.oracle_value, r.direction, False, -1.0)
        return [bad] + reports[1:]

    monkeypatch.setattr(audit, "run_suite", tampered)
    code, text = run("audit")
    assert code == 1
    assert text.startswith("VIOLATION")


def test_parse_errors_exit_two():
    assert run("nonsense")[0] == 2
    assert run("constants")[0] == 2
    assert run("constants", "--dim", "1")[0] == 2
    assert run("bound", "--id", "NOPE", "--dim", "2")[0] == 2


def test_numeric_failure_exit_three(monkeypatch):
    def boom(*args, **kwargs):
        raise ConvergenceError("no sign change")

    monkeypatch.setattr(specfun, "bessel_zero", boom)
    from weylbounds import bounds

    bounds._constants.cache_clear()
    try:
        code, _ = run("constants", "--dim", "5")
    finally:
        monkeypatch.undo()
        bounds._constants.cache_clear()
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weylbounds", "constants", "--dim", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "H=3.000000000000" in proc.stdout
