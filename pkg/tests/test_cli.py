"""Command line surface: records, grids, verify suites, exit codes and
byte stability."""

import csv
import io
import json

import pytest

from cswave.cli import main, parse_lambda


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_lambda_plain(self):
        assert parse_lambda("0.3,-0.1") == [0.3 + 0j, -0.1 + 0j]

    def test_lambda_complex(self):
        assert parse_lambda("0.3:0.4,-0.1:0") == [0.3 + 0.4j, -0.1 + 0j]


class TestEval:
    def test_zero_point_value(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--rep", "zero", "--g", "2", "--lambda", "0,0")
        assert code == 0
        rec = json.loads(out)
        assert rec["value_re"] == pytest.approx(1.0 / 6.0, rel=1e-12)
        assert rec["value_im"] == pytest.approx(0.0, abs=1e-15)

    def test_plane_wave_components(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--rep", "euler", "--g", "2", "--lambda", "0.3", "--x", "1.2"
        )
        rec = json.loads(out)
        import cmath

        expected = cmath.exp(2j * cmath.pi * 0.36)
        assert rec["value_re"] == pytest.approx(expected.real, abs=1e-12)
        assert rec["value_im"] == pytest.approx(expected.imag, abs=1e-12)

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run_cli(
            capsys, "eval", "--rep", "series", "--g", "2",
            "--lambda", "0.5,-0.5", "--x", "0,1",
        )
        assert code == 2
        assert "error:" in err

    def test_length_mismatch(self, capsys):
        code, _, _ = run_cli(
            capsys, "eval", "--rep", "euler", "--g", "2", "--lambda", "0.5,-0.5", "--x", "1"
        )
        assert code == 2

    def test_byte_stability(self, capsys):
        args = ("eval", "--rep", "mb", "--g", "2", "--lambda", "0.4,-0.1", "--x", "0.3,0")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2


class TestTable:
    def test_sweep_monotone_near_zero(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--rep", "zero", "--g", "2", "--lambda", "0,0",
            "--grid", "lambda1=0:1:11", "--format", "csv",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 11
        vals = [abs(float(r["value_re"])) for r in rows]
        assert all(a >= b for a, b in zip(vals, vals[1:]))

    def test_empty_grid_header_only(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--rep", "zero", "--g", "2", "--lambda", "0,0",
            "--format", "csv",
        )
        assert code == 0
        lines = [ln for ln in out.splitlines() if ln]
        assert len(lines) == 1
        assert lines[0].startswith("rep,")

    def test_duality_columns(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--rep", "duality", "--g", "2",
            "--lambda", "0.25,-0.25", "--x", "0.3,-0.3",
            "--grid", "x1=0.2:0.6:3", "--tol", "1e-6", "--format", "csv",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 3
        assert all(float(r["abs_diff"]) < 1e-6 for r in rows)

    def test_row_major_order(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--rep", "zero", "--g", "2", "--lambda", "0,0",
            "--grid", "lambda1=0:1:2", "--grid", "lambda2=-1:0:2", "--format", "csv",
        )
        rows = list(csv.DictReader(io.StringIO(out)))
        combos = [(r["lambda1"], r["lambda2"]) for r in rows]
        assert combos == [("0.0", "-1.0"), ("0.0", "0.0"), ("1.0", "-1.0"), ("1.0", "0.0")]

    def test_per_point_errors_recorded(self, capsys):
        # the series representation rejects non-descending x per point but
        # the run continues
        code, out, _ = run_cli(
            capsys, "table", "--rep", "series", "--g", "2", "--lambda", "0.5,-0.5",
            "--x", "1,0", "--grid", "x1=-1:1:2", "--format", "csv",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 2
        assert rows[0]["error"] != "" and rows[1]["error"] == ""

    def test_grid_size_cap(self, capsys):
        code, _, _ = run_cli(
            capsys, "table", "--rep", "zero", "--g", "2", "--lambda", "0,0",
            "--grid", "lambda1=0:1:101", "--grid", "lambda2=0:1:101",
        )
        assert code == 2


class TestVerify:
    def test_zero_point_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "zero-point", "--g", "2")
        assert code == 0
        rep = json.loads(out)
        assert rep["pass"] is True
        assert rep["suite"] == "zero-point"

    def test_duality_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "duality", "--g", "2")
        assert code == 0

    def test_bounds_requires_strong_coupling(self, capsys):
        code, _, err = run_cli(capsys, "verify", "bounds", "--g", "0.5")
        assert code == 2

    def test_every_suite_is_registered(self):
        from cswave.suites import SUITES

        expected = {
            "double-sine", "limits", "duality", "zero-point", "eigen-differential",
            "eigen-difference", "baxter", "dual-baxter", "barnes", "gustafson",
            "kernel-identity", "hypergeom-identity", "commutativity", "asymptotics",
            "bounds",
        }
        assert set(SUITES) == expected

    def test_verify_byte_stability(self, capsys):
        _, out1, _ = run_cli(capsys, "verify", "barnes", "--seed", "3")
        _, out2, _ = run_cli(capsys, "verify", "barnes", "--seed", "3")
        assert out1 == out2
