import json
import subprocess
import sys

import pytest

from tvws_interference import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pdf_table(capsys):
    code, out, _ = run(["pdf", "--alpha", "4", "--k", "2", "--r", "1"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# schema_version: 1"
    assert lines[2] == "r,pdf_canonical"
    assert float(lines[3].split(",")[1]) == pytest.approx(0.2075537487102974, rel=1e-14)


def test_pdf_oracle_and_literal_columns(capsys):
    code, out, _ = run(["pdf", "--alpha", "6", "--k", "1", "--r", "0.5,2", "--oracle", "--paper-literal"], capsys)
    assert code == 0
    assert out.splitlines()[2] == "r,pdf_canonical,pdf_paper_literal,pdf_ltinv"


def test_point_mass_notice(capsys):
    code, _, err = run(["pdf", "--alpha", "2", "--k", "1"], capsys)
    assert code == cli.EXIT_CONFIG
    assert "point mass" in err


def test_geometry_rejection(capsys):
    code, _, err = run(["cdf", "--alpha", "4", "--lam", "0.05", "--rmax", "3.4", "--rp", "70"], capsys)
    assert code == 2 and "r_p" in err


def test_k_and_geometry_are_exclusive(capsys):
    code, _, err = run(["cdf", "--alpha", "4", "--k", "1", "--lam", "0.1", "--rmax", "5"], capsys)
    assert code == 2


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "c.ini"
    cfg.write_text("[model]\nalpha = 4\nradius = 3\n")
    code, _, err = run(["cdf", "--config", str(cfg), "--k", "1"], capsys)
    assert code == 2 and "model.radius" in err


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "c.ini"
    cfg.write_text("[model]\nalpha = 4\nk = 3\n")
    _, out, _ = run(["cdf", "--config", str(cfg), "--k", "1", "--r", "1"], capsys)
    assert json.loads(out.splitlines()[1][len("# config: "):])["K"] == 1.0


def test_help_lists_keys_with_units(capsys):
    with pytest.raises(SystemExit):
        cli.main(["detect", "--help"])
    out = capsys.readouterr().out
    assert "detector.inr_db" in out and "dB" in out and "exit codes" in out


def test_entropy_json(capsys):
    code, out, _ = run(["entropy", "--alpha", "4", "--k", "1"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == 1
    assert doc["differential_entropy"] == pytest.approx(2.6313356208368837, rel=1e-10)


def test_mean_literal_column(capsys):
    code, out, _ = run(["mean", "--alpha", "3", "--k", "0.5598", "--paper-literal"], capsys)
    assert code == 0
    assert out.splitlines()[-1].endswith(",nan")


def test_campaign_seed_from_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.SEED_ENV, "77")
    prefix = str(tmp_path / "c")
    assert cli.main(["campaign", "--alpha", "4", "--lam", "0.2", "--rmax", "4", "--trials", "50", "--out", prefix]) == 0
    doc = json.loads(open(prefix + ".json").read())
    assert doc["seed_used"] == 77 and len(doc["samples"]) == 50


def test_bad_seed_environment(monkeypatch, capsys):
    monkeypatch.setenv(cli.SEED_ENV, "abc")
    code, _, err = run(["campaign", "--alpha", "4", "--lam", "0.2", "--rmax", "4", "--trials", "5", "--out", "/tmp/x"], capsys)
    assert code == 2


def test_detect_quick_mode(tmp_path, capsys):
    prefix = str(tmp_path / "d")
    argv = ["detect", "--trials", "20", "--n-samples", "500", "--snr=-10:0:5", "--seed", "1", "--out", prefix]
    assert cli.main(argv) == 0
    doc = json.loads(open(prefix + ".json").read())
    assert doc["snr_db"] == [-10.0, -5.0, 0.0]
    assert doc["config"]["calibration_trials"] == 500


def test_detect_insufficient_calibration(tmp_path, capsys):
    argv = ["detect", "--trials", "20", "--calibration-trials", "20", "--n-samples", "200", "--out", str(tmp_path / "d")]
    code, _, err = run(argv, capsys)
    assert code == 2 and "calibration" in err


def test_validate_fault_injection(tmp_path, capsys):
    out = tmp_path / "v.json"
    code, _, _ = run(["validate", "--trials", "200", "--seed", "5", "--corrupt-k", "--out", str(out)], capsys)
    doc = json.loads(out.read_text())
    assert code == cli.EXIT_VALIDATION
    assert doc["checks"]["normalization"]["passed"] is False
    assert doc["seed"] == 5


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tvws_interference", "cdf", "--alpha", "4", "--k", "1", "--r", "4"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[-1].startswith("4.0,")
