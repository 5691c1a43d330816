import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "relqosc.cli"]


def run_cli(*args, check=False):
    proc = subprocess.run(
        CLI + list(args), capture_output=True, text=True, timeout=300
    )
    if check and proc.returncode != 0:
        raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
    return proc


def parse_csv(text):
    lines = [
        ln for ln in text.splitlines()
        if ln and not ln.startswith("#") and not ln.startswith("[")
    ]
    header = lines[0].split(",")
    return header, [dict(zip(header, ln.split(","))) for ln in lines[1:]]


class TestSpectrum:
    def test_default_table_values(self):
        proc = run_cli("spectrum", "--family", "1d-ho", "--levels", "3", check=True)
        header, rows = parse_csv(proc.stdout)
        assert header[:3] == ["n", "e2_analytic", "e2_numeric"]
        assert [row["e2_analytic"] for row in rows] == ["1", "3", "5"]
        for row in rows:
            rel = abs(float(row["e2_numeric"]) - float(row["e2_analytic"]))
            assert rel <= 1e-4 * float(row["e2_analytic"])

    def test_analytic_only_leaves_solver_cells_empty(self):
        proc = run_cli(
            "spectrum", "--family", "2d-ho", "--ml", "-2", "--levels", "2",
            "--method", "analytic", check=True,
        )
        _, rows = parse_csv(proc.stdout)
        assert [row["e2_analytic"] for row in rows] == ["9", "13"]
        assert all(row["e2_numeric"] == "" and row["rel_err"] == "" for row in rows)

    def test_json_document_round_trips(self):
        proc = run_cli(
            "spectrum", "--family", "1d-iso", "--format", "json", "--levels", "4",
            check=True,
        )
        doc = json.loads(proc.stdout)
        assert doc["family"] == "1d-iso"
        assert len(doc["levels"]) == 4
        assert json.dumps(doc, indent=2) + "\n" == proc.stdout

    def test_runs_are_byte_identical(self):
        args = ("spectrum", "--family", "2d-iso", "--b", "0.25", "--ml", "1")
        first = run_cli(*args, check=True)
        second = run_cli(*args, check=True)
        assert first.stdout == second.stdout

    def test_output_file(self, tmp_path):
        out = tmp_path / "table.csv"
        proc = run_cli("spectrum", "--family", "1d-ho", "--out", str(out), check=True)
        assert proc.stdout == ""
        header, rows = parse_csv(out.read_text())
        assert rows and header[0] == "n"


class TestValidationExits:
    @pytest.mark.parametrize(
        "args",
        [
            ("spectrum", "--family", "2d-iso", "--ml", "0"),  # sub-critical sector
            ("spectrum", "--family", "1d-ho", "--levels", "0"),
            ("spectrum", "--family", "1d-ho", "--ml", "1"),  # ml is 2D-only
            ("ajc", "--family", "2d-ho", "--ml", "1", "--delta", "-1"),
            ("nonrel", "--family", "1d-ho", "--c-list", "10,10"),
            ("nonrel", "--family", "1d-ho", "--c-list", "10,-3"),
        ],
    )
    def test_bad_input_exits_2(self, args):
        proc = run_cli(*args)
        assert proc.returncode == 2
        assert "error" in proc.stderr.lower()

    def test_unknown_suite_exits_2(self):
        proc = run_cli("verify", "--suite", "nope")
        assert proc.returncode == 2

    def test_wavefunction_level_bound(self):
        proc = run_cli("wavefunction", "--family", "1d-ho", "--levels", "3", "--n", "7")
        assert proc.returncode == 2


class TestWavefunction:
    def test_csv_has_metadata_and_matching_profiles(self):
        proc = run_cli(
            "wavefunction", "--family", "1d-ho", "--n", "1", "--grid-n", "2000",
            check=True,
        )
        meta = next(ln for ln in proc.stdout.splitlines() if ln.startswith("#"))
        assert "family=1d-ho" in meta and "n=1" in meta
        header, rows = parse_csv(proc.stdout)
        assert header == ["x", "psi1_analytic", "psi1_numeric", "psi2_numeric"]
        worst = max(
            abs(float(r["psi1_analytic"]) - float(r["psi1_numeric"])) for r in rows
        )
        peak = max(abs(float(r["psi1_analytic"])) for r in rows)
        assert worst <= 1e-3 * peak

    def test_second_component_weight(self):
        """The lower-component weight satisfies the exact (E-mc2)/(E+mc2) ratio."""
        proc = run_cli(
            "wavefunction", "--family", "1d-ho", "--n", "1", "--grid-n", "4000",
            "--format", "json", check=True,
        )
        doc = json.loads(proc.stdout)
        xs = [row["x"] for row in doc["samples"]]
        h = xs[1] - xs[0]
        w2 = h * sum(row["psi2_numeric"] ** 2 for row in doc["samples"])
        e = doc["e"]
        assert w2 == pytest.approx((e - 1.0) / (e + 1.0), rel=1e-3)


class TestVerifyCommand:
    def test_single_suite_passes(self):
        proc = run_cli("verify", "--suite", "pair")
        assert proc.returncode == 0
        lines = proc.stdout.splitlines()
        assert all(ln.startswith("[PASS]") for ln in lines[:-1])
        assert "checks passed" in lines[-1]

    def test_unknown_family_lines_absent(self):
        proc = run_cli("verify", "--suite", "susy")
        assert proc.returncode == 0
        assert "[FAIL]" not in proc.stdout


class TestNonrel:
    def test_table_and_ratio_column(self):
        proc = run_cli(
            "nonrel", "--family", "1d-ho", "--levels", "3", "--c-list", "10,20,40",
            check=True,
        )
        header, rows = parse_csv(proc.stdout)
        assert "ratio" in header
        ratios = [float(r["ratio"]) for r in rows if r["ratio"] not in ("", "nan")]
        assert ratios and all(3.5 <= q <= 4.5 for q in ratios)
        assert proc.stdout.count("[PASS]") >= 1

    def test_json_includes_checks(self):
        proc = run_cli("nonrel", "--family", "1d-iso", "--format", "json", check=True)
        doc = json.loads(proc.stdout)
        assert doc["rows"] and doc["checks"]
        assert all(chk["passed"] for chk in doc["checks"])


class TestAjc:
    def test_harmonic_2d_rungs_are_integers(self):
        proc = run_cli("ajc", "--family", "2d-ho", "--ml", "1", "--levels", "4", check=True)
        header, rows = parse_csv(proc.stdout)
        assert rows[0]["kernel"] == "genuine"
        for i, row in enumerate(rows):
            assert float(row["ata"]) == pytest.approx(float(i), abs=1e-2)
        matched = [r for r in rows if r["n"] != ""]
        assert matched and all(abs(float(r["rel_err"])) <= 1e-2 for r in matched)

    def test_spurious_kernel_is_flagged(self):
        proc = run_cli("ajc", "--family", "1d-iso", "--levels", "3", check=True)
        _, rows = parse_csv(proc.stdout)
        spurious = [r for r in rows if r["kernel"] == "spurious"]
        assert len(spurious) == 1
        assert spurious[0]["n"] == "" and spurious[0]["e2_analytic"] == ""


class TestConfigFile:
    def test_config_defaults_and_flag_override(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"family": "1d-ho", "levels": 2, "omega": 2.0}))
        proc = run_cli("spectrum", "--config", str(cfg), check=True)
        _, rows = parse_csv(proc.stdout)
        assert len(rows) == 2
        assert rows[1]["e2_analytic"] == "5"  # 1 + 2 m omega c^2 n with omega = 2
        proc2 = run_cli("spectrum", "--config", str(cfg), "--omega", "1", check=True)
        _, rows2 = parse_csv(proc2.stdout)
        assert rows2[1]["e2_analytic"] == "3"

    def test_unknown_config_key_exits_2(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"familly": "1d-ho"}))
        proc = run_cli("spectrum", "--config", str(cfg))
        assert proc.returncode == 2

    def test_missing_config_file_exits_3(self, tmp_path):
        proc = run_cli("spectrum", "--family", "1d-ho", "--config", str(tmp_path / "absent.json"))
        assert proc.returncode == 3
