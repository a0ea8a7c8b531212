"""CLI contract: verbs, formats, exit codes, input resolution."""

import csv
import io
import json
from fractions import Fraction

import pytest

from runexp.cli import (
    Thresholds,
    bound_checks,
    main,
    ratio_matches,
    sigma_cell_matches,
)
from runexp.runs import find_runs, run_stats
from runexp.words import word_from_text


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_markdown_table(text):
    lines = [l for l in text.splitlines() if l.startswith("|")]
    rows = [[c.strip() for c in line.strip("|").split("|")] for line in lines]
    return [dict(zip(rows[0], r)) for r in rows[2:]]


class TestAnalyze:
    def test_literal_word_markdown(self, capsys):
        code, out, err = run_cli(capsys, "analyze", "aabaabaa")
        assert code == 0
        cells = {r["field"]: r["value"] for r in parse_markdown_table(out)}
        assert cells["n"] == "8"
        assert cells["rho"] == "4"
        assert cells["sigma_exact"] == "26/3"
        assert cells["sigma"] == "8.67"

    def test_no_runs_word(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "abc", "--format", "csv")
        assert code == 0
        row = next(csv.DictReader(io.StringIO(out)))
        assert row["rho"] == "0"
        assert row["sigma_exact"] == "0"

    def test_formats_carry_identical_numbers(self, capsys):
        _, md, _ = run_cli(capsys, "analyze", "aabaabaa")
        _, out_csv, _ = run_cli(capsys, "analyze", "aabaabaa", "--format", "csv")
        _, out_json, _ = run_cli(capsys, "analyze", "aabaabaa", "--format", "json")
        md_cells = {r["field"]: r["value"] for r in parse_markdown_table(md)}
        csv_cells = next(csv.DictReader(io.StringIO(out_csv)))
        json_cells = json.loads(out_json)
        for key, value in md_cells.items():
            assert csv_cells[key] == value
            # json carries plain counts as numbers, everything else as strings
            if key in {"n", "rho", "rho_cubic"}:
                assert json_cells[key] == int(value)
            else:
                assert json_cells[key] == value

    def test_run_listing_flag(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "aabaabaa", "--format", "csv", "--runs")
        assert code == 0
        assert "1\t8\t3\t8\t8/3" in out

    def test_json_runs_embedded(self, capsys):
        _, out, _ = run_cli(capsys, "analyze", "abab", "--format", "json", "--runs")
        payload = json.loads(out)
        assert payload["runs"] == [[1, 4, 2, 4, "2/1"]]

    def test_word_file_input(self, capsys, tmp_path):
        path = tmp_path / "w.txt"
        path.write_text("abababab\n")
        code, out, _ = run_cli(capsys, "analyze", str(path), "--format", "json")
        assert code == 0
        assert json.loads(out)["rho"] == 1

    def test_family_member_input(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "family:5", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["n"] == 6647
        assert payload["sigma_over_n"] == "2.0307"

    def test_missing_file_with_separator_fails(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "analyze", str(tmp_path / "absent.txt"))
        assert code == 2
        assert "no such file" in err

    def test_unprintable_literal_fails(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "ab\tba")
        assert code == 2
        assert "error" in err

    def test_bad_family_reference(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "family:two")
        assert code == 2
        assert "family" in err

    def test_large_family_member_gated(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "family:9")
        assert code == 2
        assert "--large" in err


class TestGenerateAndRuns:
    def test_generate_stdout(self, capsys):
        code, out, _ = run_cli(capsys, "generate", "1")
        assert code == 0
        assert out == "0100101101011010110100101101011\n"

    def test_generate_to_file_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "w2.txt"
        code, _, _ = run_cli(capsys, "generate", "2", "-o", str(path))
        assert code == 0
        code, out, _ = run_cli(capsys, "analyze", str(path), "--format", "json")
        assert json.loads(out)["n"] == 119

    def test_generate_out_of_range(self, capsys):
        code, _, err = run_cli(capsys, "generate", "11")
        assert code == 2
        assert "1..10" in err

    def test_runs_listing(self, capsys):
        code, out, _ = run_cli(capsys, "runs", "aabaabaa")
        assert code == 0
        assert out.splitlines() == [
            "1\t2\t1\t2\t2/1",
            "1\t8\t3\t8\t8/3",
            "4\t5\t1\t2\t2/1",
            "7\t8\t1\t2\t2/1",
        ]

    def test_runs_to_file(self, capsys, tmp_path):
        path = tmp_path / "runs.tsv"
        code, _, _ = run_cli(capsys, "runs", "abab", "-o", str(path))
        assert code == 0
        assert path.read_text() == "1\t4\t2\t4\t2/1\n"

    def test_family_spec_file(self, capsys, tmp_path):
        spec = tmp_path / "fib.fam"
        spec.write_text("seed = a\n[inner]\na -> ab\nb -> a\n")
        code, out, _ = run_cli(capsys, "generate", "5", "--family-spec", str(spec))
        assert code == 0
        assert out.strip() == "abaababaabaab"
        code, out, _ = run_cli(
            capsys, "analyze", "family:5", "--family-spec", str(spec), "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["word"] == "fib:5"


class TestVerify:
    def test_pass_report(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "aabaabaa")
        assert code == 0
        report = json.loads(out)
        assert report["pass"] is True
        assert report["oracle"] == {"cap": 2000, "checked": True, "match": True}
        assert report["handles"] == {
            "n": 8,
            "rho": 4,
            "A": 3,
            "B": 2,
            "disjoint": True,
            "lemma1_failures": [],
            "case_a_iff_p1": True,
        }
        assert all(entry["ok"] for entry in report["bounds"].values())

    def test_oracle_skipped_above_cap(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "ababababab", "--oracle-cap", "4")
        assert code == 0
        report = json.loads(out)
        assert report["oracle"] == {"cap": 4, "checked": False, "match": None}

    def test_family_word_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "family:3")
        assert code == 0
        assert json.loads(out)["pass"] is True

    def test_threshold_override_can_force_failure(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "aaaa", "--threshold", "runs_bound=0.1"
        )
        assert code == 1
        report = json.loads(out)
        assert report["pass"] is False
        assert report["bounds"]["rho_le_runs_bound_n"]["ok"] is False

    def test_bad_threshold_name(self, capsys):
        code, _, err = run_cli(capsys, "verify", "aaaa", "--threshold", "nope=1")
        assert code == 2
        assert "threshold" in err


class TestTable3:
    def test_small_prefix_passes(self, capsys):
        code, out, err = run_cli(capsys, "table3", "--max-i", "3")
        assert code == 0
        assert err == ""
        rows = parse_markdown_table(out)
        assert [r["n"] for r in rows] == ["31", "119", "461"]
        assert [r["sigma"] for r in rows] == ["47.10", "222.26", "911.68"]
        assert [r["sigma_over_n"] for r in rows] == ["1.5194", "1.8677", "1.9776"]

    def test_formats_identical(self, capsys):
        _, md, _ = run_cli(capsys, "table3", "--max-i", "2")
        _, out_csv, _ = run_cli(capsys, "table3", "--max-i", "2", "--format", "csv")
        _, out_json, _ = run_cli(capsys, "table3", "--max-i", "2", "--format", "json")
        md_rows = parse_markdown_table(md)
        csv_rows = list(csv.DictReader(io.StringIO(out_csv)))
        json_rows = json.loads(out_json)
        assert md_rows == csv_rows == json_rows

    def test_large_indices_gated(self, capsys):
        code, _, err = run_cli(capsys, "table3", "--max-i", "9")
        assert code == 2
        assert "--large" in err

    def test_index_zero_rejected(self, capsys):
        code, _, err = run_cli(capsys, "table3", "--max-i", "0")
        assert code == 2


class TestCertify:
    def test_low_index_fails_informatively(self, capsys):
        code, out, _ = run_cli(capsys, "certify-lower-bound", "--index", "1")
        assert code == 1
        assert "verdict: FAIL" in out

    def test_index_four_is_still_below_target(self, capsys):
        code, out, _ = run_cli(capsys, "certify-lower-bound", "--index", "4")
        assert code == 1
        assert "verdict: FAIL" in out

    def test_lowered_target_passes(self, capsys):
        code, out, _ = run_cli(
            capsys, "certify-lower-bound", "--index", "4",
            "--threshold", "lower_bound_target=2.0",
        )
        assert code == 0
        assert "verdict: PASS" in out

    def test_bad_power(self, capsys):
        code, _, err = run_cli(capsys, "certify-lower-bound", "--power", "0")
        assert code == 2

    def test_huge_power_capped(self, capsys):
        code, _, err = run_cli(capsys, "certify-lower-bound", "--power", "1000000")
        assert code == 2
        assert "cap" in err


class TestComparisonHelpers:
    def test_sigma_cell_accepts_both_roundings(self):
        assert sigma_cell_matches(Fraction(26, 3), "8.67")
        assert sigma_cell_matches(Fraction(26, 3), "8.66")
        assert not sigma_cell_matches(Fraction(26, 3), "8.65")

    def test_ratio_tolerance(self):
        assert ratio_matches(Fraction("1.51941"), "1.5194")
        assert ratio_matches(Fraction("1.51949"), "1.5195")
        assert not ratio_matches(Fraction("1.5196"), "1.5194")

    def test_bound_checks_use_exact_arithmetic(self):
        word = word_from_text("aabaabaa", "ab")
        stats = run_stats(word, find_runs(word))
        result = bound_checks(stats, Thresholds())
        assert all(entry["ok"] for entry in result.values())
        tight = bound_checks(stats, Thresholds(sigma_bound=Fraction(26, 24)))
        assert tight["sigma_lt_sigma_bound_n"]["ok"] is False
