import numpy as np
import pytest

from fdpctl import cli, oracle


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def data_rows(text):
    return [ln for ln in text.splitlines() if ln and not ln.startswith("#")]


class TestConstantsCommand:
    def test_lr_first_row(self, capsys):
        code, out, _ = run(capsys, "constants", "--family", "lr", "--n", "10",
                           "--gamma", "1/10", "--alpha", "0.05")
        assert code == 0
        rows = data_rows(out)
        assert rows[0] == "i,alpha_i"
        assert rows[1].startswith("1,") and float(rows[1].split(",")[1]) == 0.005

    def test_rescaled_family_matches_lr_for_k1(self, capsys):
        _, out_lr, _ = run(capsys, "constants", "--family", "lr", "--n", "10",
                           "--gamma", "1/10")
        _, out_32, _ = run(capsys, "constants", "--family", "thm32",
                           "--template", "lr", "--k", "1", "--n", "10",
                           "--gamma", "1/10")
        vals_lr = [float(r.split(",")[1]) for r in data_rows(out_lr)[1:11]]
        vals_32 = [float(r.split(",")[1]) for r in data_rows(out_32)[1:11]]
        assert np.allclose(vals_32, vals_lr, rtol=1e-12)
        assert any(r.startswith("C,") for r in data_rows(out_32))

    def test_pairwise_family_k1_is_usage_error(self, capsys):
        code, _, err = run(capsys, "constants", "--family", "thm34", "--k", "1",
                           "--n", "10", "--gamma", "1/10", "--rho", "0.5")
        assert code == 1 and "k >= 2" in err

    def test_pairwise_family_without_model_is_usage_error(self, capsys):
        code, _, err = run(capsys, "constants", "--family", "thm37", "--n", "8",
                           "--gamma", "1/10")
        assert code == 1 and "needs --rho" in err

    def test_calibrated_family_reports_beta(self, capsys):
        code, out, _ = run(capsys, "constants", "--family", "thm38", "--n", "8",
                           "--gamma", "1/10", "--f", "independence")
        assert code == 0
        assert any(r.startswith("beta_star,") for r in data_rows(out))

    def test_decimal_gamma_warns(self, capsys):
        code, _, err = run(capsys, "constants", "--family", "lr", "--n", "5",
                           "--gamma", "0.1")
        assert code == 0 and "interpreted as exact fraction 1/10" in err

    def test_missing_n_is_usage_error(self, capsys):
        code, _, err = run(capsys, "constants", "--family", "lr",
                           "--gamma", "1/10")
        assert code == 1 and "--n" in err

    def test_unattainable_calibration_is_numeric_failure(self, capsys):
        code, _, err = run(capsys, "constants", "--family", "thm37", "--n", "5",
                           "--gamma", "1/10", "--f", "independence",
                           "--alpha", "1e-15")
        assert code == 3 and "unattainable" in err


class TestTestCommand:
    @pytest.fixture()
    def pfile(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("# demo p-values\n0.01\n0.06\n0.07\n")
        return str(path)

    def test_stepup_rejects_all(self, capsys, pfile):
        code, out, _ = run(capsys, "test", "--pvalues", pfile, "--direction",
                           "su", "--constants", "0.02,0.05,0.075")
        assert code == 0
        assert data_rows(out)[-1] == "R,3"

    def test_stepdown_rejects_one(self, capsys, pfile):
        code, out, _ = run(capsys, "test", "--pvalues", pfile, "--direction",
                           "sd", "--constants", "0.02,0.05,0.075")
        assert code == 0
        rows = data_rows(out)
        assert rows[-1] == "R,1"
        assert rows[1].endswith(",1") and rows[2].endswith(",0")

    def test_family_constants_path(self, capsys, pfile):
        code, out, _ = run(capsys, "test", "--pvalues", pfile, "--direction",
                           "su", "--family", "lr", "--gamma", "1/10",
                           "--alpha", "0.2")
        assert code == 0 and data_rows(out)[-1].startswith("R,")

    def test_empty_file_is_usage_error(self, capsys, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("# nothing here\n")
        code, _, err = run(capsys, "test", "--pvalues", str(path),
                           "--direction", "su", "--constants", "0.1")
        assert code == 1 and "no p-values" in err

    def test_out_of_range_pvalue(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0.5\n1.5\n")
        code, _, err = run(capsys, "test", "--pvalues", str(path),
                           "--direction", "su", "--constants", "0.1,0.2")
        assert code == 1 and "[0, 1]" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "test", "--pvalues", "/nonexistent/p.txt",
                           "--direction", "su", "--constants", "0.1")
        assert code == 1


class TestSimulateCommand:
    def test_single_cell_matches_api(self, capsys, monkeypatch):
        monkeypatch.setenv("FDPCTL_TIMESTAMP", "fixed")
        code, out, _ = run(capsys, "simulate", "--procedures", "lr-su",
                           "--n", "30", "--pi0", "0.5", "--rho", "0.2",
                           "--gamma", "1/10", "--reps", "200", "--seed", "13")
        assert code == 0
        row = data_rows(out)[1].split(",")
        assert row[0] == "lr-su"

        from fdpctl.core import Gamma
        from fdpctl.simlab import (DependenceModel, MonteCarloConfig,
                                   build_procedure, run_monte_carlo)
        rep = run_monte_carlo(MonteCarloConfig(
            n=30, pi0=0.5, gamma=Gamma(1, 10), reps=200, seed=13,
            model=DependenceModel("uniform", 0.2),
            procedure=build_procedure("lr-su")))
        assert float(row[5]) == rep.exceedance
        assert float(row[7]) == rep.power

    def test_reps_one_blanks_se_columns(self, capsys):
        code, out, _ = run(capsys, "simulate", "--procedures", "lr-sd",
                           "--n", "10", "--pi0", "0.5", "--rho", "0",
                           "--gamma", "1/10", "--reps", "1", "--seed", "1")
        assert code == 0
        fields = data_rows(out)[1].split(",")
        assert fields[6] == "" and fields[8] == ""

    def test_complete_null_blanks_power_columns(self, capsys):
        code, out, _ = run(capsys, "simulate", "--procedures", "lr-su",
                           "--n", "10", "--pi0", "1.0", "--rho", "0",
                           "--gamma", "1/10", "--reps", "20", "--seed", "1")
        assert code == 0
        fields = data_rows(out)[1].split(",")
        assert fields[7] == "" and fields[8] == ""

    def test_output_is_deterministic_bytes(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("FDPCTL_TIMESTAMP", "2024-01-01T00:00:00Z")
        args = ["simulate", "--procedures", "lr-sd,lr-su", "--n", "20",
                "--pi0", "0.5", "--rho", "0,0.4", "--gamma", "1/10",
                "--reps", "100", "--seed", "5"]
        f1, f2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
        assert cli.main(args + ["-o", f1, "--threads", "1"]) == 0
        assert cli.main(args + ["-o", f2, "--threads", "3"]) == 0
        assert open(f1, "rb").read() == open(f2, "rb").read()

    def test_svg_output(self, capsys, tmp_path):
        out_svg = str(tmp_path / "chart.svg")
        code, _, _ = run(capsys, "simulate", "--procedures", "lr-sd,lr-su",
                         "--n", "20", "--pi0", "0.5", "--rho", "0,0.3,0.6",
                         "--gamma", "1/10", "--reps", "50", "--seed", "2",
                         "--svg", out_svg)
        assert code == 0
        doc = open(out_svg).read()
        assert doc.startswith("<!--") and "<svg" in doc
        assert doc.count("<polyline") >= 4          # 2 procedures x 2 panels
        assert "stroke-dasharray" in doc            # the alpha rule

    def test_block_dependence_flag(self, capsys):
        code, out, _ = run(capsys, "simulate", "--procedures", "lr-sd",
                           "--n", "12", "--pi0", "0.5", "--rho", "0.4",
                           "--gamma", "1/10", "--reps", "20", "--seed", "1",
                           "--dependence", "block:3")
        assert code == 0 and len(data_rows(out)) == 2

    def test_bad_procedure_token(self, capsys):
        code, _, err = run(capsys, "simulate", "--procedures", "nope",
                           "--n", "10", "--pi0", "0.5", "--rho", "0",
                           "--gamma", "1/10")
        assert code == 1 and "unknown procedure" in err


class TestVerifyCommand:
    def test_constants_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "constants")
        assert code == 0
        assert "lr_scale_identity" in out and "PASS" in out and "FAIL" not in out

    def test_pairdist_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "pairdist")
        assert code == 0 and "pairwise_kernel" in out

    def test_failure_exit_code(self, capsys, monkeypatch):
        failing = oracle.SuiteReport()
        failing.add("synthetic", 1, ["boom"])
        monkeypatch.setattr(oracle, "run_suite",
                            lambda **kw: failing)
        code, out, _ = run(capsys, "verify", "--suite", "lemmas")
        assert code == 2 and "FAIL" in out and "boom" in out

    def test_unknown_suite_is_usage_error(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "everything")
        assert code == 1

    def test_small_fuzz_run(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "pairdist",
                           "--fuzz-count", "10")
        assert code == 0
