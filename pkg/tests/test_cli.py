"""Command-line surface: outputs, determinism, config handling, exit codes."""

import json
import math

import numpy as np
import pytest

from dirac_revivals.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_VALIDATION, main


def run(tmp_path, *argv):
    return main(list(argv))


def read_csv(path):
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    assert lines[0] == "# schema=1"
    header = lines[1].split(",")
    rows = [list(map(float, line.split(","))) for line in lines[2:]]
    return header, np.array(rows)


class TestSpectral:
    def test_weights_and_sorting(self, tmp_path):
        out = tmp_path / "spec.csv"
        assert main(["spectral", "--a", "5", "--out", str(out)]) == EXIT_OK
        header, rows = read_csv(out)
        assert header == ["energy", "weight"]
        assert abs(rows[:, 1].sum() - 1.0) <= 1e-9
        assert np.all(np.diff(rows[:, 0]) > 0.0)

    def test_fitted_center_grows_with_distance(self, tmp_path):
        n0 = {}
        for a in ("1", "10"):
            out = tmp_path / f"ts{a}.json"
            assert main(["timescales", "--a", a, "--out", str(out)]) == EXIT_OK
            n0[a] = json.loads(out.read_text())["n0"]
        assert n0["10"] > n0["1"]

    def test_massive_small_cat_positive_dominated(self, tmp_path):
        out = tmp_path / "spec.csv"
        assert main(["spectral", "--a", "1", "--mass", "5", "--out", str(out)]) == EXIT_OK
        _, rows = read_csv(out)
        negative = rows[rows[:, 0] < 0.0, 1].sum()
        assert negative < 0.05


class TestSurvival:
    def test_first_row_unity_and_determinism(self, tmp_path):
        a = tmp_path / "s1.csv"
        b = tmp_path / "s2.csv"
        args = ["survival", "--a", "5", "--tmin", "0", "--tmax", "30", "--samples", "300"]
        assert main(args + ["--out", str(a)]) == EXIT_OK
        assert main(args + ["--out", str(b)]) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()
        header, rows = read_csv(a)
        assert header == ["t", "abs_C"]
        assert rows[0, 0] == 0.0 and abs(rows[0, 1] - 1.0) < 1e-12

    def test_point_state_with_explicit_window(self, tmp_path):
        # a = 0 leaves too few levels for the fit; explicit windows bypass it
        out = tmp_path / "s.csv"
        assert main(["survival", "--a", "0", "--mass", "5", "--tmax", "20",
                     "--samples", "400", "--out", str(out)]) == EXIT_OK
        _, rows = read_csv(out)
        assert rows[:, 1].min() > 0.9

    def test_complex_columns(self, tmp_path):
        out = tmp_path / "c.csv"
        assert main(["survival", "--a", "3", "--tmax", "5", "--samples", "50",
                     "--complex", "--out", str(out)]) == EXIT_OK
        header, rows = read_csv(out)
        assert header == ["t", "re", "im", "abs"]
        assert rows[0, 1] == pytest.approx(1.0, abs=1e-12)
        assert np.all(np.abs(np.hypot(rows[:, 1], rows[:, 2]) - rows[:, 3]) < 1e-12)


class TestTimescales:
    def test_report_fields_and_order(self, tmp_path):
        out = tmp_path / "ts.json"
        assert main(["timescales", "--a", "5", "--out", str(out)]) == EXIT_OK
        text = out.read_text()
        doc = json.loads(text)
        assert list(doc)[:7] == ["schema", "n0", "delta_n", "residual", "T1", "T2", "T3"]
        assert doc["T1"] < doc["T2"] < doc["T3"]
        # byte stability
        out2 = tmp_path / "ts2.json"
        main(["timescales", "--a", "5", "--out", str(out2)])
        assert out2.read_text() == text

    def test_ab_ratio_solves_kz(self, tmp_path):
        out = tmp_path / "ts.json"
        assert main(["timescales", "--a", "5", "--ab-ratio", "2.04", "--out", str(out)]) == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["params"]["solved_kz"] == pytest.approx(
            2.04 * math.sqrt(2.0 * doc["n0"]), rel=1e-12)


class TestDensity:
    def test_rows_normalized_and_symmetric(self, tmp_path):
        out = tmp_path / "d.csv"
        assert main(["density", "--a", "3", "--tmax", "10", "--nt", "3",
                     "--ns", "2001", "--out", str(out)]) == EXIT_OK
        header, rows = read_csv(out)
        assert header == ["s", "t", "value"]
        for t in np.unique(rows[:, 1]):
            sel = rows[rows[:, 1] == t]
            integral = np.trapezoid(sel[:, 2], sel[:, 0])
            assert integral == pytest.approx(1.0, abs=1e-6)
            assert np.abs(sel[:, 2] - sel[::-1, 2]).max() < 1e-12

    def test_json_round_trip(self, tmp_path):
        out = tmp_path / "d.json"
        assert main(["density", "--a", "3", "--tmax", "10", "--nt", "3", "--ns", "101",
                     "--format", "json", "--out", str(out)]) == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["schema"] == 1
        assert len(doc["values"]) == doc["ns"] * doc["nt"]


class TestObservables:
    def test_columns_and_t0(self, tmp_path):
        out = tmp_path / "o.csv"
        assert main(["observables", "--a", "5", "--ab-ratio", "2.04",
                     "--samples", "200", "--tmax", "400", "--out", str(out)]) == EXIT_OK
        header, rows = read_csv(out)
        idx = {name: k for k, name in enumerate(header)}
        assert rows[0, idx["gamma0"]] == pytest.approx(1.0, abs=1e-12)
        assert rows[0, idx["gamma5_alpha_z"]] == pytest.approx(1.0, abs=1e-12)
        assert rows[0, idx["i_gamma_z"]] == pytest.approx(0.0, abs=1e-12)
        assert rows[0, idx["concurrence_sq"]] == pytest.approx(0.0, abs=1e-12)
        assert rows[0, idx["mutual_information"]] == pytest.approx(0.0, abs=1e-12)
        col_a = rows[:, idx["i_gamma_z"]]
        col_b = rows[:, idx["i_gamma0_gamma5"]]
        assert np.abs(col_a - col_b).max() < 1e-10


class TestValidate:
    def test_default_passes(self, capsys):
        assert main(["validate", "--a", "3"]) == EXIT_OK
        report = capsys.readouterr().out
        assert "PASS" in report and "FAIL" not in report
        for name in ("coefficient_oracle_equivalence", "parity_selection_leak",
                     "normalization_defect", "constraint_identity", "selection_rule_leak"):
            assert name in report

    def test_absurd_tolerance_fails(self, monkeypatch):
        monkeypatch.setenv("DIRAC_REVIVALS_TOL", "1e-30")
        assert main(["validate", "--a", "3"]) == EXIT_VALIDATION

    def test_corrupt_tolerance_is_config_error(self, monkeypatch):
        monkeypatch.setenv("DIRAC_REVIVALS_TOL", "not-a-number")
        assert main(["validate", "--a", "3"]) == EXIT_CONFIG


class TestConfigHandling:
    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("a = 4.0   # distance\nmass = 1.0\nsymmetry = S\n")
        out1 = tmp_path / "a4.json"
        out2 = tmp_path / "a6.json"
        assert main(["timescales", "--config", str(cfg), "--out", str(out1)]) == EXIT_OK
        assert main(["timescales", "--config", str(cfg), "--a", "6", "--out", str(out2)]) == EXIT_OK
        assert json.loads(out2.read_text())["n0"] > json.loads(out1.read_text())["n0"]

    def test_conflicting_kz_and_ratio(self):
        assert main(["survival", "--kz", "1.0", "--ab-ratio", "2.0"]) == EXIT_CONFIG

    def test_bad_config_line(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("a == oops\n")
        assert main(["timescales", "--config", str(cfg)]) == EXIT_CONFIG

    def test_unknown_key(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("banana = 3\n")
        assert main(["timescales", "--config", str(cfg)]) == EXIT_CONFIG

    def test_bad_eB(self):
        assert main(["spectral", "--eB", "-1"]) == EXIT_CONFIG

    def test_antisymmetric_zero_distance(self):
        assert main(["spectral", "--symmetry", "A", "--a", "0"]) == EXIT_CONFIG

    def test_io_error_exit_code(self, tmp_path):
        missing = tmp_path / "no" / "such" / "dir" / "x.csv"
        assert main(["spectral", "--a", "2", "--out", str(missing)]) == EXIT_IO
