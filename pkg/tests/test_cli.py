import json

import numpy as np
import pytest

from distqc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_pump_leading_order_point(capsys):
    code, out = run(capsys, "pump", "--F", "1.0", "--pg", "1e-4", "--pM", "equal",
                    "--schedule", "1,2,2")
    assert code == 0
    payload = json.loads(out)
    lead = np.array([4, 2, 2]) * 1e-4 / 15
    np.testing.assert_allclose(payload["f_bar"][1:], lead, rtol=0.01)
    assert payload["scheme"] == "double"
    assert set(payload["success_probs"]) == {"r_lv1", "p_lv1", "r_lv2"}


def test_pump_single_scheme(capsys):
    code, out = run(capsys, "pump", "--F", "0.9", "--pg", "1e-3", "--schedule", "3,4")
    assert code == 0
    payload = json.loads(out)
    assert payload["scheme"] == "single"
    assert payload["infidelity"] < 0.1


def test_threshold_curve_csv(capsys):
    code, out = run(capsys, "threshold-curve", "--schedule", "1,2,2",
                    "--grid", "0.9:1.0:3")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("# distqc")
    assert lines[1] == "F,p_g"
    rows = [line.split(",") for line in lines[2:]]
    assert len(rows) == 3
    last_F, last_p = map(float, rows[-1])
    assert last_F == 1.0
    assert last_p == pytest.approx(0.0026, abs=1e-4)


def test_qvalues_from_explicit_fbar(capsys):
    code, out = run(capsys, "qvalues", "--fbar", "0.997,0.001,0.001,0.001",
                    "--pg", "0", "--pM", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["qa"] == pytest.approx(8e-3)
    assert payload["qb"] == pytest.approx(4e-3)
    assert payload["fault_tolerant"] is True


def test_ttg_reports_circuit_agreement(capsys):
    code, out = run(capsys, "ttg", "--kind", "II", "--fbar", "0.997,0.001,0.001,0.001",
                    "--pg", "0.0015", "--pM", "0.001")
    assert code == 0
    payload = json.loads(out)
    assert payload["circuit_table_max_dev"] < 1e-12
    assert len(payload["table"]) == 16


def test_resource_point_with_overheads(capsys):
    code, out = run(capsys, "resource", "--F", "0.9", "--pg", "1e-3",
                    "--schedule", "1,2,2", "--n-bits", "1024")
    assert code == 0
    payload = json.loads(out)
    assert 25 <= payload["K"] <= 60
    assert payload["T"] == pytest.approx(2e10 * payload["Omega"])
    assert payload["R"] == pytest.approx(payload["K"] * payload["T"])


def test_infidelity_contour_to_file(tmp_path, capsys):
    out_path = tmp_path / "contour.csv"
    code, _ = run(capsys, "infidelity-contour", "--schedule", "1,2,2",
                  "--level", "1e-3", "--grid", "0.95:0.99:2", "--out", str(out_path))
    assert code == 0
    text = out_path.read_text()
    assert text.splitlines()[1] == "schedule,F,p_g"
    assert '"1,2,2"' in text


def test_output_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        code, _ = run(capsys, "resource", "--F", "0.9", "--pg", "1e-3",
                      "--schedule", "1,2,2", "--mc-trials", "20000",
                      "--seed", "7", "--out", str(path))
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_validation_errors_exit_one(capsys):
    assert main(["pump", "--F", "1.2", "--pg", "1e-4", "--schedule", "1,2,2"]) == 1
    capsys.readouterr()
    assert main(["pump", "--F", "0.9", "--pg", "1e-4", "--schedule", "1,2"]) == 0
    capsys.readouterr()
    assert main(["pump", "--F", "0.9", "--pg", "1e-4", "--schedule", "1,2,3,4"]) == 1
    capsys.readouterr()
    assert main(["pump", "--unknown-flag", "1"]) == 1
    capsys.readouterr()
    assert main(["resource", "--schedule", "1,2,2", "--levels", "30"]) == 1
    capsys.readouterr()


def test_memory_error_substitution(capsys):
    code, out = run(capsys, "pump", "--F", "0.9", "--pg", "1e-3", "--eta", "1e-4",
                    "--l-wait", "5", "--schedule", "1,2,2")
    assert code == 0
    payload = json.loads(out)
    assert payload["p_g"] == pytest.approx(1.5e-3)
    assert payload["p_M"] == pytest.approx(1.5e-3)
    # folding memory error past the cap is a validation error
    assert main(["pump", "--F", "0.9", "--pg", "0.5", "--eta", "0.1",
                 "--l-wait", "5", "--schedule", "1,2,2"]) == 1
    capsys.readouterr()


def test_verify_passes(capsys):
    code, out = run(capsys, "verify")
    assert code == 0
    assert "FAIL" not in out
    assert out.count("PASS") == 5
