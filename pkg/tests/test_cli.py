import csv
import io
import json
import subprocess
import sys

import pytest

from fordspheres.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMomentsCommand:
    def test_single_row_at_S1(self, capsys):
        code, out, _ = run_cli(["moments", "--k", "1", "--grid", "1"], capsys)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 1
        assert rows[0]["value_num"] == "4" and rows[0]["value_den"] == "1"

    def test_csv_schema(self, capsys):
        code, out, _ = run_cli(
            ["moments", "--k", "2", "--grid", "2,4,6,8", "--format", "csv"], capsys
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 4
        assert set(rows[0]) == {
            "k",
            "S",
            "value_num",
            "value_den",
            "value_float",
            "sigma1_float",
            "sigma2_float",
        }
        for row in rows:
            assert int(row["value_num"]) > 0 and int(row["value_den"]) > 0

    def test_json_format_and_fit(self, capsys):
        code, out, _ = run_cli(
            ["moments", "--k", "1", "--grid", "2,4,8,12", "--format", "json"], capsys
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["k"] == 1 and len(doc["rows"]) == 4
        assert doc["fit"]["exponent"] == 2.0

    def test_smax_grid(self, capsys):
        code, out, _ = run_cli(["moments", "--k", "1", "--smax", "8"], capsys)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [int(r["S"]) for r in rows] == [1, 2, 4, 8]

    def test_bad_flags_exit_2(self, capsys):
        assert run_cli(["moments", "--k", "0", "--grid", "1"], capsys)[0] == 2
        assert run_cli(["moments", "--k", "1", "--grid", "a,b"], capsys)[0] == 2
        assert run_cli(["moments", "--k", "1"], capsys)[0] == 2

    def test_manifest_sidecar_and_plot_data(self, tmp_path, capsys):
        out_file = tmp_path / "m.csv"
        plot = tmp_path / "m.tsv"
        code, _, _ = run_cli(
            [
                "moments", "--k", "1", "--grid", "2,4",
                "--out", str(out_file), "--emit-plot-data", str(plot),
            ],
            capsys,
        )
        assert code == 0
        assert out_file.exists()
        manifest = json.loads((tmp_path / "m.csv.manifest.json").read_text())
        assert manifest["command"] == "moments"
        assert manifest["version"]
        assert len(plot.read_text().splitlines()) == 2

    def test_byte_identical_across_threads(self, capsys):
        outputs = []
        for threads in ("1", "2", "4"):
            import fordspheres.moments as mo

            mo._BATCH_CACHE.clear()
            code, out, _ = run_cli(
                ["moments", "--k", "2", "--grid", "8", "--threads", threads], capsys
            )
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1] == outputs[2]


class TestConstantsCommand:
    def test_json_schema(self, capsys):
        code, out, _ = run_cli(
            ["constants", "--kmax", "2", "--rmax", "150", "--format", "json"], capsys
        )
        assert code == 0
        doc = json.loads(out)
        consts = doc["constants"]
        assert set(consts) == {"zeta_i_2", "z1", "z2", "C", "m1_coeff", "k"}
        assert set(consts["k"]["2"]) == {"z_prime", "z_double_prime", "xi"}
        assert consts["k"]["2"]["xi"][0] > 0

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            ["constants", "--kmax", "2", "--rmax", "150", "--format", "csv"], capsys
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["constant", "k", "value", "error"]

    def test_repeat_run_byte_identical(self, capsys):
        args = ["constants", "--kmax", "3", "--rmax", "150"]
        _, out1, _ = run_cli(args, capsys)
        _, out2, _ = run_cli(args, capsys)
        assert out1 == out2

    def test_bad_kappa_exit_2(self, capsys):
        code, _, _ = run_cli(
            ["constants", "--kmax", "2", "--kappa", "0.5"], capsys
        )
        assert code == 2


class TestRegionCommand:
    def test_S1_diagnostics(self, capsys):
        code, out, _ = run_cli(["region", "--S", "1", "--s-re", "1", "--s-im", "0"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == 4 and doc["coprime_count"] == 4
        assert doc["area"] == pytest.approx(3.141592653589793)

    def test_matches_library(self, capsys):
        from fordspheres.gaussint import GaussianInt
        from fordspheres.lattice import OmegaRegion, count_omega_coprime, count_omega_lattice

        code, out, _ = run_cli(["region", "--S", "10", "--s-re", "3", "--s-im", "1"], capsys)
        assert code == 0
        doc = json.loads(out)
        region = OmegaRegion(GaussianInt(3, 1), 10)
        assert doc["count"] == count_omega_lattice(region).count
        assert doc["coprime_count"] == count_omega_coprime(region)

    def test_zero_s_exit_2(self, capsys):
        assert run_cli(["region", "--S", "5", "--s-re", "0", "--s-im", "0"], capsys)[0] == 2

    def test_oversized_s_exit_2(self, capsys):
        assert run_cli(["region", "--S", "2", "--s-re", "3", "--s-im", "0"], capsys)[0] == 2


class TestPairsCommand:
    def test_S1_rows(self, capsys):
        code, out, _ = run_cli(["pairs", "--S", "1"], capsys)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 4
        assert all(r["dist_num"] == "1" and r["dist_den"] == "1" for r in rows)


class TestVerifyCommand:
    def test_identities_suite_passes(self, capsys):
        code, out, _ = run_cli(["verify", "--suite", "identities"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["all_hard_passed"] is True
        assert any(c["name"] == "identity.phi_divisor_sum" for c in doc["checks"])

    def test_unknown_suite_exit_2(self):
        proc = subprocess.run(
            [sys.executable, "-m", "fordspheres", "verify", "--suite", "bogus"],
            capture_output=True,
        )
        assert proc.returncode == 2


def test_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "fordspheres", "--version"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0.1.0"
