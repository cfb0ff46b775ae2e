import json
import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "mlfrac.cli"]


def run_cli(*args, **kwargs):
    return subprocess.run(CMD + list(args), capture_output=True, text=True,
                          **kwargs)


class TestMlCommand:
    def test_exponential_row(self):
        res = run_cli("ml", "--alpha", "1.0", "--r", "1.0")
        assert res.returncode == 0
        header, row = res.stdout.strip().splitlines()
        assert header == "alpha,r,value,log_value,method,err_estimate"
        fields = row.split(",")
        assert fields[2].startswith("2.718281828459045")

    def test_grid_positivity(self):
        res = run_cli("ml", "--alpha", "0.5", "--r-min", "-10", "--r-max",
                      "10", "--r-steps", "21", "--format", "csv")
        assert res.returncode == 0
        rows = res.stdout.strip().splitlines()[1:]
        assert len(rows) == 21
        assert all(float(r.split(",")[2]) > 0 for r in rows)

    def test_half_order_value(self):
        res = run_cli("ml", "--alpha", "0.5", "--r", "1.0")
        value = res.stdout.strip().splitlines()[1].split(",")[2]
        assert value.startswith("5.0089800")

    def test_bad_flags_usage_exit(self):
        res = run_cli("ml", "--alpha", "not-a-number", "--r", "1")
        assert res.returncode == 2

    def test_missing_r_spec(self):
        res = run_cli("ml", "--alpha", "0.5")
        assert res.returncode == 2

    def test_domain_error_exit(self):
        res = run_cli("ml", "--alpha", "1.5", "--r", "1.0")
        assert res.returncode == 1


class TestSolutionCommand:
    def test_gaussian_value(self):
        res = run_cli("solution", "--alpha", "1", "--a", "1", "--d", "1",
                      "--x", "1", "--t", "1")
        assert res.returncode == 0
        row = res.stdout.strip().splitlines()[1]
        assert row.split(",")[5].startswith("0.597194678")

    def test_methods_agree(self):
        rows = {}
        for method in ("series", "quadrature"):
            res = run_cli("solution", "--alpha", "0.75", "--x", "5", "--t",
                          "2", "--method", method)
            fields = res.stdout.strip().splitlines()[1].split(",")
            rows[method] = (float(fields[5]), float(fields[8]))
        diff = abs(rows["series"][0] - rows["quadrature"][0])
        assert diff <= rows["series"][1] + rows["quadrature"][1]

    def test_delegation_reported(self):
        res = run_cli("solution", "--alpha", "0.5", "--x", "0", "--t", "1",
                      "--method", "series")
        row = res.stdout.strip().splitlines()[1]
        assert row.split(",")[7] == "DirectQuadrature"

    def test_nonpositive_time_rejected(self):
        res = run_cli("solution", "--alpha", "0.5", "--x", "1", "--t", "0")
        assert res.returncode == 1
        assert "Dirac" in res.stderr

    def test_grids_cross_product(self):
        res = run_cli("solution", "--alpha", "0.75", "--x", "1,2", "--t",
                      "0.5,1,2")
        assert len(res.stdout.strip().splitlines()) == 1 + 6


class TestVerifyCommand:
    def test_ml_suite_passes(self):
        res = run_cli("verify", "--suite", "ml")
        assert res.returncode == 0
        lines = res.stdout.strip().splitlines()
        assert lines[0] == ("suite,check,detail,value,threshold,satisfied,"
                            "informational")
        assert all(line.split(",")[5] == "true" for line in lines[1:])

    def test_caputo_suite_has_informational_xi_row(self):
        res = run_cli("verify", "--suite", "caputo")
        assert res.returncode == 0
        informational = [line for line in res.stdout.splitlines()
                         if "xi_printed_formula" in line]
        assert informational
        assert all(line.split(",")[6] == "true" for line in informational)

    def test_summary_on_stderr(self):
        res = run_cli("verify", "--suite", "ml")
        assert "checks satisfied" in res.stderr
        assert "checks satisfied" not in res.stdout


class TestFrontCommand:
    def test_divergence_run(self):
        res = run_cli("front", "--alpha", "0.5", "--beta", "0.4", "--c", "1",
                      "--t-min", "5", "--t-max", "40", "--t-steps", "8")
        assert res.returncode == 0
        lines = res.stdout.strip().splitlines()
        assert lines[0] == "t,x,log_u,log_lower_bound,bracket_ok"
        logs = [float(line.split(",")[2]) for line in lines[1:]]
        assert all(b > a for a, b in zip(logs, logs[1:]))

    def test_beta_out_of_scope(self):
        res = run_cli("front", "--alpha", "0.5", "--beta", "0.6", "--c", "1",
                      "--t-min", "5", "--t-max", "40")
        assert res.returncode == 1
        assert "beta" in res.stderr

    def test_json_schema(self):
        res = run_cli("front", "--alpha", "0.75", "--beta", "0.25", "--c",
                      "2", "--t-min", "10", "--t-max", "50", "--t-steps",
                      "5", "--format", "json")
        assert res.returncode == 0
        doc = json.loads(res.stdout)
        assert doc["schema_version"] == "1"
        assert doc["command"] == "front"
        assert len(doc["rows"]) == 5
        assert set(doc["rows"][0]) == {"t", "x", "log_u", "log_lower_bound",
                                       "bracket_ok"}


class TestDeterminism:
    @pytest.mark.parametrize("args", [
        ("ml", "--alpha", "0.5", "--r-min", "-10", "--r-max", "10",
         "--r-steps", "21"),
        ("ml", "--alpha", "0.75", "--r", "3.0", "--format", "json"),
        ("solution", "--alpha", "0.75", "--x", "1,5", "--t", "0.5,2"),
        ("front", "--alpha", "0.5", "--beta", "0.4", "--c", "1", "--t-min",
         "5", "--t-max", "40", "--t-steps", "6", "--format", "json"),
        ("verify", "--suite", "ml"),
    ])
    def test_byte_identical_reruns(self, args):
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.returncode == second.returncode
        assert first.stdout == second.stdout

    def test_out_file_matches_stdout(self, tmp_path):
        target = tmp_path / "rows.csv"
        res = run_cli("solution", "--alpha", "0.75", "--x", "2", "--t", "1",
                      "--out", str(target))
        assert res.returncode == 0
        assert target.read_text() == res.stdout

    def test_env_tolerance_respected(self):
        import os

        env = dict(os.environ, MLFRAC_DEFAULT_TOL="1e-6")
        loose = subprocess.run(
            CMD + ["solution", "--alpha", "0.75", "--x", "5", "--t", "1"],
            capture_output=True, text=True, env=env)
        bound = float(loose.stdout.strip().splitlines()[1].split(",")[8])
        assert bound <= 1e-6
