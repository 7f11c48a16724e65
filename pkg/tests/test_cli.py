import json
import subprocess
import sys

import numpy as np
import pytest

from geninv.cli import main
from geninv.io import parse_matrix
from geninv.reference import PAIR_4X3_A, PAIR_4X3_W, WQBT_4X3, float_matrix

from conftest import rel


def write_csv(path, rows):
    path.write_text("\n".join(",".join(str(x) for x in row) for row in rows) + "\n")
    return str(path)


@pytest.fixture
def pair_files(tmp_path):
    a = write_csv(tmp_path / "a.csv", PAIR_4X3_A)
    w = write_csv(tmp_path / "w.csv", PAIR_4X3_W)
    return a, w


def run_main(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInverseCommands:
    def test_pinv_csv_golden(self, tmp_path, capsys):
        a = write_csv(tmp_path / "a.csv", [[2, 0], [0, 0]])
        code, out, _ = run_main(capsys, "pinv", a)
        assert code == 0
        assert out.strip().splitlines() == ["0.5,0", "0,0"]

    def test_exact_output_uses_fractions(self, tmp_path, capsys):
        a = write_csv(tmp_path / "a.csv", [[3, 0], [0, 0]])
        code, out, _ = run_main(capsys, "pinv", a, "--exact")
        assert code == 0
        assert out.strip().splitlines() == ["1/3,0", "0,0"]

    @pytest.mark.parametrize("q", [0, 1, 2, 3])
    def test_wqbt_reference_values_exact(self, pair_files, capsys, q):
        a, w = pair_files
        code, out, _ = run_main(capsys, "wqbt", "--q", str(q), a, w, "--exact")
        assert code == 0
        expected = float_matrix(WQBT_4X3[q])
        got = parse_matrix(out, "csv")
        assert rel(got, expected) == 0.0

    def test_wqbt_float_matches_exact(self, pair_files, capsys):
        a, w = pair_files
        code, out_float, _ = run_main(capsys, "wqbt", "--q", "2", a, w)
        assert code == 0
        got = parse_matrix(out_float, "csv")
        assert rel(got, float_matrix(WQBT_4X3[2])) < 1e-10

    def test_json_in_json_out(self, tmp_path, capsys):
        p = tmp_path / "a.json"
        p.write_text(json.dumps(
            {"rows": 2, "cols": 2, "data": [[1, 0], [0, 0]]}))
        code, out, _ = run_main(capsys, "core-ep", str(p))
        assert code == 0
        payload = json.loads(out)
        assert payload["rows"] == 2
        assert np.array_equal(parse_matrix(out, "json"), [[1, 0], [0, 0]])

    def test_verify_flag_appends_residuals(self, pair_files, capsys):
        a, w = pair_files
        code, out, _ = run_main(capsys, "wqbt", "--q", "1", a, w, "--verify")
        assert code == 0
        lines = [ln for ln in out.splitlines() if ln.startswith("residual ")]
        assert len(lines) == 4
        for line in lines:
            assert float(line.split("=")[1]) < 1e-10

    def test_verify_flag_exact_path(self, pair_files, capsys):
        a, w = pair_files
        code, out, _ = run_main(capsys, "wdrazin", a, w, "--exact", "--verify")
        assert code == 0
        assert "residual outer = 0.000000e+00" in out


class TestErrorPaths:
    def test_missing_file_is_parse_error(self, tmp_path, capsys):
        code, _, err = run_main(capsys, "pinv", str(tmp_path / "nope.csv"))
        assert code == 3
        assert "parse error" in err

    def test_malformed_entry_is_parse_error(self, tmp_path, capsys):
        a = write_csv(tmp_path / "a.csv", [[1, "x?"], [0, 1]])
        code, _, err = run_main(capsys, "pinv", a)
        assert code == 3
        assert "line 1" in err

    def test_domain_error(self, tmp_path, capsys):
        a = write_csv(tmp_path / "n.csv", [[0, 1], [0, 0]])
        code, _, err = run_main(capsys, "group", a)
        assert code == 4
        assert "index" in err

    def test_shape_error(self, tmp_path, capsys):
        a = write_csv(tmp_path / "a.csv", [[1, 2, 3], [4, 5, 6]])
        code, _, err = run_main(capsys, "drazin", a)
        assert code == 4

    def test_usage_errors(self, tmp_path, capsys):
        a = write_csv(tmp_path / "a.csv", [[1]])
        assert run_main(capsys, "qbt", a)[0] == 2              # missing --q
        assert run_main(capsys, "qbt", "--q", "-1", a)[0] == 2
        assert run_main(capsys, "frobnicate", a)[0] == 2
        assert main([]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "geninv" in capsys.readouterr().out


class TestToleranceResolution:
    def test_env_var_is_read(self, tmp_path, capsys, monkeypatch):
        a = write_csv(tmp_path / "a.csv", [[1]])
        monkeypatch.setenv("GENINV_TOL", "not-a-number")
        code, _, err = run_main(capsys, "pinv", a)
        assert code == 2
        assert "GENINV_TOL" in err

    def test_flag_overrides_env(self, tmp_path, capsys, monkeypatch):
        a = write_csv(tmp_path / "a.csv", [[1]])
        monkeypatch.setenv("GENINV_TOL", "not-a-number")
        code, out, _ = run_main(capsys, "pinv", a, "--tol", "1e-8")
        assert code == 0
        assert out.strip() == "1"

    def test_nonpositive_tolerance_rejected(self, tmp_path, capsys):
        a = write_csv(tmp_path / "a.csv", [[1]])
        assert run_main(capsys, "pinv", a, "--tol", "0")[0] == 2


class TestDecompose:
    def test_core_ep_blocks_and_residuals(self, tmp_path, capsys):
        a = write_csv(tmp_path / "a.csv", [[1, 1, 0], [0, 0, 1], [0, 0, 0]])
        code, out, _ = run_main(capsys, "decompose", "core-ep", a)
        assert code == 0
        for label in ("rank = 1", "index = 2", "U:", "T:", "S:", "N:"):
            assert label in out
        for line in out.splitlines():
            if line.startswith("residual "):
                assert float(line.split("=")[1]) < 1e-9

    def test_weighted_requires_weight_file(self, tmp_path, capsys):
        a = write_csv(tmp_path / "a.csv", [[1]])
        code, _, err = run_main(capsys, "decompose", "weighted-core-ep", a)
        assert code == 2

    def test_weighted_blocks(self, pair_files, capsys):
        a, w = pair_files
        code, out, _ = run_main(capsys, "decompose", "weighted-core-ep", a, w)
        assert code == 0
        for label in ("t = ", "ind_aw = 3", "ind_wa = 2", "A1:", "W3:"):
            assert label in out


class TestVerifyCommand:
    def test_examples_scope_passes(self, capsys, tmp_path):
        report_path = tmp_path / "report.json"
        code, out, _ = run_main(capsys, "verify", "examples",
                                "--json", str(report_path))
        assert code == 0
        assert "PASS 15/15 checks" in out
        payload = json.loads(report_path.read_text())
        assert payload["passed"] is True
        assert len(payload["results"]) == 15

    def test_corpus_scope_small(self, capsys):
        code, out, _ = run_main(capsys, "verify", "corpus",
                                "--seed", "5", "--count", "6", "--max-dim", "6")
        assert code == 0
        assert "PASS" in out

    def test_failing_run_exits_five(self, capsys):
        code, out, _ = run_main(capsys, "verify", "examples", "--tol", "1e-30")
        assert code == 5
        assert "FAIL" in out


def test_module_invocation_help():
    proc = subprocess.run([sys.executable, "-m", "geninv", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "command" in proc.stdout


def test_entry_point_roundtrip(tmp_path):
    a = tmp_path / "a.csv"
    a.write_text("1,0\n0,2\n")
    proc = subprocess.run(
        [sys.executable, "-m", "geninv.cli", "pinv", str(a), "--exact"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip().splitlines() == ["1,0", "0,1/2"]
