"""CLI surface: formats, determinism, round-trips, and error exits."""

import csv
import io
import json
from fractions import Fraction

import pytest

from eulerian_bounds import bound_report
from eulerian_bounds.cli import bound_report_from_dict, emit_plot, main


def run_cli(capsys, args):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestCounts:
    def test_s3_row(self, capsys):
        code, out, err = run_cli(capsys, ["counts", "--n", "3"])
        assert code == 0 and not err
        rows = {r["X"]: r for r in parse_csv(out)}
        row = rows["{3}"]
        assert row["brute_force"] == row["complement"] == row["deletion"] == "3"
        assert rows["{}"]["brute_force"] == "1"

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, ["counts", "--n", "2", "--format", "json"])
        assert code == 0
        doc = json.loads(out)
        assert doc["command"] == "counts"
        assert any(r["X"] == "{2,3}" and r["brute_force"] == 1 for r in doc["rows"])


class TestLform:
    def test_all_rows_agree(self, capsys):
        code, out, _ = run_cli(capsys, ["lform", "--n", "4"])
        assert code == 0
        rows = parse_csv(out)
        assert rows and all(r["equal"] == "True" for r in rows)
        unit = next(r for r in rows if r["monomial"] == "1")
        assert unit["closed_form"] == "4"


class TestPencil:
    def test_matrix_dump_and_cert(self, capsys):
        code, out, _ = run_cli(capsys, ["pencil", "--n", "2", "--format", "json"])
        assert code == 0
        rows = json.loads(out)["rows"]
        a0 = {(r["row"], r["col"]): r["value"] for r in rows if r["matrix"] == "A0"}
        assert a0[(0, 0)] == "2" and a0[(2, 2)] == "9" and a0[(0, 2)] == "3"
        cert = next(r for r in rows if r["matrix"] == "psd_A0")
        assert cert["value"] == "PSD"
        # Every exact cell parses as a rational.
        for r in rows:
            if r["matrix"] != "psd_A0":
                Fraction(r["value"])


class TestBounds:
    def test_csv_soundness_columns(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["bounds", "--n-min", "4", "--n-max", "8", "--kind", "both",
             "--y", "paper", "--format", "csv", "--prec", "80"],
        )
        assert code == 0
        rows = parse_csv(out)
        assert {r["kind"] for r in rows} == {"old", "new"}
        for r in rows:
            lin_hi = Fraction(r["lin_bound_hi"])
            xmin_lo, xmin_hi = Fraction(r["xmin_lo"]), Fraction(r["xmin_hi"])
            q_right_hi = Fraction(r["q_right_hi"])
            # Interval-consistent ordering of the chain.
            assert Fraction(r["lin_bound_lo"]) <= xmin_hi
            assert xmin_lo <= q_right_hi
            assert q_right_hi < 0
            assert lin_hi < 0
            # Decimal cells carry declared precision.
            assert r["prec_bits"] == "80"
            float(r["D"])
            float(r["N"])

    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["bounds", "--n-min", "4", "--n-max", "5", "--kind", "old",
             "--format", "json", "--prec", "64"],
        )
        assert code == 0
        rows = json.loads(out)["rows"]
        for row in rows:
            rebuilt = bound_report_from_dict(row)
            fresh = bound_report(rebuilt.n, "old", prec=64)
            assert rebuilt.y == fresh.y
            assert rebuilt.mult == fresh.mult
            assert rebuilt.x_min == fresh.x_min
            assert rebuilt.difference == fresh.difference

    def test_determinism(self, capsys):
        args = ["bounds", "--n-min", "4", "--n-max", "6", "--kind", "new",
                "--format", "csv", "--prec", "64"]
        _, first, _ = run_cli(capsys, args)
        _, second, _ = run_cli(capsys, args)
        assert first == second

    def test_jobs_match_serial(self, capsys):
        args = ["bounds", "--n-min", "4", "--n-max", "6", "--kind", "old",
                "--format", "csv", "--prec", "64"]
        _, serial, _ = run_cli(capsys, args)
        _, parallel, _ = run_cli(capsys, args + ["--jobs", "2"])
        assert serial == parallel

    def test_range_cap(self, capsys):
        code, out, err = run_cli(
            capsys, ["bounds", "--n-min", "4", "--n-max", "40"]
        )
        assert code == 2 and not out
        payload = json.loads(err)
        assert payload["command"] == "bounds"
        assert "allow-large" in payload["error"]

    def test_empty_range(self, capsys):
        code, _, err = run_cli(
            capsys, ["bounds", "--n-min", "8", "--n-max", "4"]
        )
        assert code == 2
        assert "empty range" in json.loads(err)["error"]


class TestRoots:
    def test_rows_and_prec(self, capsys):
        code, out, _ = run_cli(
            capsys, ["roots", "--n-max", "3", "--format", "json", "--prec", "64"]
        )
        assert code == 0
        rows = json.loads(out)["rows"]
        assert [r["n"] for r in rows] == [1, 2, 3]
        r2 = rows[1]
        assert Fraction(r2["q_left_hi"]) - Fraction(r2["q_left_lo"]) <= Fraction(
            1, 2**64
        )

    def test_env_var_sets_default_prec(self, capsys, monkeypatch):
        monkeypatch.setenv("EULERIAN_BOUNDS_PREC", "32")
        code, out, _ = run_cli(capsys, ["roots", "--n-max", "1", "--format", "json"])
        assert code == 0
        assert json.loads(out)["prec_bits"] == 32


class TestDiff:
    def test_old_ratio_columns(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["diff", "--kind", "old", "--index-min", "6", "--index-max", "12",
             "--prec", "64"],
        )
        assert code == 0
        rows = parse_csv(out)
        assert [int(r["index"]) for r in rows] == list(range(6, 13))
        assert rows[0]["ratio"] == ""
        last = rows[-1]
        assert abs(float(last["ratio"]) - 0.75) < 0.2
        assert float(last["difference"]) > 0

    def test_new_svg_positive_slope(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["diff", "--kind", "new", "--index-min", "5", "--index-max", "8",
             "--format", "svg", "--prec", "64"],
        )
        assert code == 0
        assert out.startswith("<?xml")
        circles = [line for line in out.splitlines() if "<circle" in line]
        cys = [float(c.split('cy="')[1].split('"')[0]) for c in circles]
        # SVG y grows downward: growing differences mean decreasing cy.
        assert cys[-1] < cys[0]

    def test_bad_range_exits_with_json(self, capsys):
        code, _, err = run_cli(
            capsys, ["diff", "--kind", "old", "--index-min", "6", "--index-max", "7"]
        )
        assert code == 2
        assert "error" in json.loads(err)


class TestEigvec:
    def test_marks_and_tail(self, capsys):
        code, out, _ = run_cli(
            capsys, ["eigvec", "--n-max", "4", "--prec", "64", "--format", "csv"]
        )
        assert code == 0
        rows = parse_csv(out)
        assert sum(1 for r in rows if r["n"] == "4") == 5
        n1 = [r for r in rows if r["n"] == "1"]
        assert all(r["degenerate"] == "True" for r in n1)
        last = next(r for r in rows if r["n"] == "4" and r["index"] == "4")
        assert float(last["entry"]) == pytest.approx(1.0)
        assert float(last["position"]) == pytest.approx(1.0)

    def test_svg_deterministic(self, capsys):
        args = ["eigvec", "--n-max", "3", "--format", "svg", "--prec", "64"]
        _, first, _ = run_cli(capsys, args)
        _, second, _ = run_cli(capsys, args)
        assert first == second
        assert "<svg" in first and first.rstrip().endswith("</svg>")

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "eig.csv"
        code, out, _ = run_cli(
            capsys,
            ["eigvec", "--n-max", "2", "--prec", "64", "--output", str(target)],
        )
        assert code == 0 and out == ""
        assert target.read_text().startswith("n,index,position,entry")


class TestErrors:
    def test_prec_floor(self, capsys):
        code, _, err = run_cli(capsys, ["roots", "--n-max", "2", "--prec", "8"])
        assert code == 2
        assert "prec" in json.loads(err)["error"]

    def test_counts_cap(self, capsys):
        code, _, err = run_cli(capsys, ["counts", "--n", "12"])
        assert code == 2
        assert "brute force" in json.loads(err)["error"]

    def test_empty_plot_rejected(self):
        with pytest.raises(Exception, match="empty data"):
            emit_plot([], "eigvec")
