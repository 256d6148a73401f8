import csv
import json
import math

import pytest

from dirac_kepler.cli import SOLVE_COLUMNS, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# --- spectrum --------------------------------------------------------------------

def test_spectrum_flagship(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    code, _, _ = run(["spectrum", "--alpha", "0.2", "--beta-s", "-0.5",
                      "--kappa", "-1", "--nr-max", "0", "--format", "csv",
                      "--out", str(out)], capsys)
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 2
    assert float(rows[0]["E"]) == pytest.approx(0.8, abs=1e-14)
    assert float(rows[1]["E"]) == pytest.approx(-0.96, abs=1e-14)
    assert rows[0]["admissible"] == "True" and rows[1]["admissible"] == "True"


def test_spectrum_integer_lstar_rows(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    code, _, _ = run(["spectrum", "--alpha", "0.5", "--beta-s", "0.5",
                      "--kappa", "-1", "--format", "csv", "--out", str(out)], capsys)
    assert code == 0
    for row in read_csv(out):
        assert float(row["l_star"]) == 0.0
        assert float(row["gamma"]) == 1.0


def test_spectrum_supercritical_exit(capsys, tmp_path):
    code, _, _ = run(["spectrum", "--alpha", "2.0", "--beta-s", "0",
                      "--kappa", "-1", "--out", str(tmp_path / "x.txt")], capsys)
    assert code == 1
    # one healthy channel keeps the run alive
    code, _, _ = run(["spectrum", "--alpha", "2.0", "--beta-s", "0",
                      "--kappa", "-1,-3", "--out", str(tmp_path / "y.txt")], capsys)
    assert code == 0


# --- solve -----------------------------------------------------------------------

def test_solve_flagship_csv_roundtrip(tmp_path, capsys):
    out = tmp_path / "solve.csv"
    code, _, _ = run(["solve", "--alpha", "0.2", "--beta-s", "-0.5",
                      "--kappa", "-1,1", "--nr-max", "0", "--format", "csv",
                      "--out", str(out)], capsys)
    assert code == 0
    with open(out, newline="") as fh:
        header = fh.readline().strip().split(",")
    assert header == list(SOLVE_COLUMNS)
    rows = read_csv(out)
    table = {(row["kappa"], row["n_r"], row["E_analytic"][:6]): row for row in rows}
    errs = [float(row["abs_err"]) for row in rows]
    assert max(errs) <= 1e-8
    # 17-significant-digit float fields parse back bit-for-bit
    from dirac_kepler import CouplingParams, channel_comparison
    comp, _ = channel_comparison(-1, CouplingParams(0.2, -0.5), n_max=0)
    emitted = {row["E_numeric"] for row in rows if row["kappa"] == "-1"}
    for line in comp:
        assert any(float(e) == line.e_numeric for e in emitted)


def test_solve_empty_window(tmp_path, capsys):
    out = tmp_path / "solve.csv"
    code, _, _ = run(["solve", "--alpha", "0.2", "--beta-s", "-0.5",
                      "--kappa", "-1", "--window", "0.05,0.5",
                      "--format", "csv", "--out", str(out)], capsys)
    assert code == 0
    assert read_csv(out) == []


def test_solve_json_roundtrip(tmp_path, capsys):
    out = tmp_path / "solve.json"
    code, _, _ = run(["solve", "--alpha", "0.2", "--beta-s", "-0.5",
                      "--kappa", "-1", "--nr-max", "0", "--format", "json",
                      "--out", str(out)], capsys)
    assert code == 0
    rows = json.loads(out.read_text())
    assert rows and all(abs(r["abs_err"]) <= 1e-8 for r in rows)
    e_plus = [r for r in rows if r["n_r"] == 0 and r["E_analytic"] > 0]
    assert e_plus[0]["E_analytic"] == pytest.approx(0.8, abs=1e-14)


def test_solve_units_ev(tmp_path, capsys):
    mc2 = 510998.95
    out = tmp_path / "solve.csv"
    code, _, _ = run(["solve", "--alpha", "0.2", "--beta-s", "-0.5",
                      "--kappa", "-1", "--nr-max", "0", "--units", "ev",
                      "--mc2", str(mc2), "--format", "csv", "--out", str(out)], capsys)
    assert code == 0
    rows = read_csv(out)
    assert float(rows[0]["E_analytic"]) == pytest.approx(0.8 * mc2, rel=1e-12)


# --- scan ------------------------------------------------------------------------

def test_scan_over_coupling_lists(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    code, _, _ = run(["scan", "--alpha", "0.2,0.5", "--beta-s", "-0.5",
                      "--kappa", "-1", "--nr-max", "0", "--format", "csv",
                      "--out", str(out)], capsys)
    assert code == 0
    rows = read_csv(out)
    alphas = {row["alpha"] for row in rows}
    assert alphas == {"0.2", "0.5"}


# --- verify-claims ----------------------------------------------------------------

def test_verify_claims_single_fast_claim(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out_text, _ = run(["verify-claims", "--claims", "quadratic-eigenvalues",
                             "--out", str(tmp_path / "rep")], capsys)
    assert code == 0
    payload = json.loads((tmp_path / "rep.json").read_text())
    assert payload["all_supported"]
    assert payload["claims"][0]["claim_id"] == "quadratic-eigenvalues"
    assert "SUPPORTED" in (tmp_path / "rep.txt").read_text()
    assert "SUPPORTED" in out_text


def test_verify_claims_unknown_id_is_usage_error(capsys):
    code, _, err = run(["verify-claims", "--claims", "bogus"], capsys)
    assert code == 2
    assert "unknown claim id" in err


# --- config handling ---------------------------------------------------------------

def test_usage_errors(capsys, tmp_path):
    code, _, err = run(["solve", "--alpha", "0.2"], capsys)
    assert code == 2 and "beta-s" in err
    code, _, err = run(["solve", "--alpha", "0.2", "--beta-s", "0.1",
                        "--e2", "0.3"], capsys)
    assert code == 2 and "not both" in err
    code, _, err = run(["solve", "--alpha", "0.2", "--beta-s", "0.1",
                        "--kappa", "0"], capsys)
    assert code == 2
    code, _, err = run(["solve", "--alpha", "0.2", "--beta-s", "0.1",
                        "--window", "-2,0.5"], capsys)
    assert code == 2
    code, _, err = run(["solve", "--alpha", "0.2", "--beta-s", "0.1",
                        "--units", "ev"], capsys)
    assert code == 2 and "--mc2" in err


def test_physical_input_mode(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    code, _, _ = run(["spectrum", "--e2", "0.2", "--a", "-0.5",
                      "--kappa", "-1", "--nr-max", "0", "--format", "csv",
                      "--out", str(out)], capsys)
    assert code == 0
    rows = read_csv(out)
    assert float(rows[0]["E"]) == pytest.approx(0.8, abs=1e-14)


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("alpha = 0.2\nbeta-s = -0.5\nkappa = -1\nnr-max = 0\n"
                   "format = csv\n# comment line\n")
    out = tmp_path / "spec.csv"
    code, _, _ = run(["spectrum", "--config", str(cfg), "--out", str(out)], capsys)
    assert code == 0
    assert len(read_csv(out)) == 2
    # flags take precedence over the file
    out2 = tmp_path / "spec2.csv"
    code, _, _ = run(["spectrum", "--config", str(cfg), "--nr-max", "1",
                      "--out", str(out2)], capsys)
    assert code == 0
    assert len(read_csv(out2)) == 4


def test_config_env_var(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "env.cfg"
    cfg.write_text("alpha = 0.5\nbeta-s = 0.0\nkappa = -1\nnr-max = 0\nformat = csv\n")
    monkeypatch.setenv("DIRAC_KEPLER_CONFIG", str(cfg))
    out = tmp_path / "spec.csv"
    code, _, _ = run(["spectrum", "--out", str(out)], capsys)
    assert code == 0
    rows = read_csv(out)
    assert float(rows[0]["E"]) == pytest.approx(math.sqrt(0.75), abs=1e-12)


def test_config_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("alpha = 0.2\nbeta-s = 0.0\nwibble = 3\n")
    code, _, err = run(["spectrum", "--config", str(cfg)], capsys)
    assert code == 2 and "wibble" in err


def test_missing_config_file(capsys):
    code, _, err = run(["spectrum", "--alpha", "0.1", "--beta-s", "0",
                        "--config", "/nonexistent/path.cfg"], capsys)
    assert code == 2
