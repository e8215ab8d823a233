import json
import subprocess
import sys

import pytest

from sepstat import config
from sepstat.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# report


def test_report_plain(capsys):
    code, out, _ = run_cli(capsys, "report", "132465879")
    assert code == 0
    assert "vertical:     {2, 3, 6, 7}" in out
    assert "horizontal:   {2, 3, 5, 8}" in out


def test_report_json(capsys):
    code, out, _ = run_cli(capsys, "report", "31524", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["vertical"] == [2, 5]
    assert data["horizontal"] == [2, 3]
    assert data["both"] == [2]
    assert data["sep_count"] == 3
    assert data["king"] is True  # no adjacent pair differs by 1


def test_report_singleton(capsys):
    code, out, _ = run_cli(capsys, "report", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["sep_count"] == 0
    assert data["vertical"] == [] and data["horizontal"] == []


def test_report_invalid_permutation(capsys):
    code, _, err = run_cli(capsys, "report", "1,1,2")
    assert code == 2
    assert "duplicate value 1" in err


# ---------------------------------------------------------------------------
# dist


def test_dist_plain_and_csv(capsys):
    code, out, _ = run_cli(capsys, "dist", "3", "--kind", "vertical")
    assert code == 0 and "0  2" in out and "1  4" in out
    code, out, _ = run_cli(
        capsys, "dist", "3", "--kind", "vertical", "--format", "csv"
    )
    assert code == 0
    assert out.splitlines() == ["n,m,count", "3,0,2", "3,1,4"]


def test_dist_empty_group(capsys):
    code, out, _ = run_cli(capsys, "dist", "0", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,m,count", "0,0,1"]


def test_dist_over_cap(capsys):
    code, _, err = run_cli(capsys, "dist", "11")
    assert code == 2
    assert "cap" in err


def test_dist_env_cap(capsys, monkeypatch):
    monkeypatch.setenv(config.ENV_MAX_N, "5")
    code, _, err = run_cli(capsys, "dist", "6")
    assert code == 2 and "cap 5" in err


def test_dist_rejects_unknown_kind(capsys):
    code, _, _ = run_cli(capsys, "dist", "3", "--kind", "sideways")
    assert code == 2


# ---------------------------------------------------------------------------
# gf


def test_gf_h_rows(capsys):
    code, out, _ = run_cli(
        capsys, "gf", "--which", "h", "--order", "3", "--format", "csv"
    )
    assert code == 0
    lines = out.splitlines()
    assert "3,0,2" in lines and "3,1,4" in lines


def test_gf_marked_bond_rows(capsys):
    code, out, _ = run_cli(
        capsys, "gf", "--which", "A", "--order", "3", "--format", "csv"
    )
    assert code == 0
    lines = out.splitlines()
    assert "3,0,6" in lines and "3,1,8" in lines and "3,2,2" in lines


def test_gf_order_zero(capsys):
    code, out, _ = run_cli(
        capsys, "gf", "--which", "h", "--order", "0", "--format", "csv"
    )
    assert code == 0
    assert out.splitlines() == ["n,m,count", "0,0,1"]


def test_gf_json_uses_decimal_strings(capsys):
    code, out, _ = run_cli(
        capsys, "gf", "--which", "h", "--order", "3", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["coeffs"]["3"] == ["2", "4"]


def test_gf_long_alias(capsys):
    code_a, out_a, _ = run_cli(
        capsys, "gf", "--which", "bonds", "--order", "4", "--format", "csv"
    )
    code_b, out_b, _ = run_cli(
        capsys, "gf", "--which", "B", "--order", "4", "--format", "csv"
    )
    assert code_a == code_b == 0 and out_a == out_b


def test_gf_order_cap(capsys):
    code, _, err = run_cli(capsys, "gf", "--order", "65")
    assert code == 2 and "outside 0..64" in err


# ---------------------------------------------------------------------------
# expect


def test_expect_formula_plain(capsys):
    code, out, _ = run_cli(capsys, "expect", "4", "--kind", "any")
    assert code == 0
    assert "11/6" in out
    assert "approx" in out  # decimal rendering is labeled


def test_expect_both_match(capsys):
    code, out, _ = run_cli(
        capsys, "expect", "3", "--kind", "both", "--mode", "both"
    )
    assert code == 0
    assert "0 = 0 MATCH" in out


def test_expect_big_n_formula(capsys):
    code, out, _ = run_cli(
        capsys, "expect", "1000000", "--kind", "vertical", "--mode", "formula"
    )
    assert code == 0
    assert "499999/250000" in out


def test_expect_empirical_over_cap(capsys):
    code, _, err = run_cli(
        capsys, "expect", "11", "--kind", "vertical", "--mode", "empirical"
    )
    assert code == 2 and "cap" in err


def test_expect_json(capsys):
    code, out, _ = run_cli(
        capsys, "expect", "4", "--kind", "any", "--mode", "both", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["formula"] == "11/6"
    assert data["empirical"] == "11/6"
    assert data["match"] is True


# ---------------------------------------------------------------------------
# maxsep


def test_maxsep_plain(capsys):
    code, out, _ = run_cli(capsys, "maxsep", "1", "--verify")
    assert code == 0
    assert "[3142]" in out and "[2413]" in out
    assert "cross-check: PASS" in out


def test_maxsep_json(capsys):
    code, out, _ = run_cli(capsys, "maxsep", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 8 and data["n"] == 8
    assert len(data["perms"]) == 8


def test_maxsep_verify_needs_cap(capsys, monkeypatch):
    monkeypatch.setenv(config.ENV_MAX_N, "7")
    code, _, err = run_cli(capsys, "maxsep", "2", "--verify")
    assert code == 2 and "cap" in err


# ---------------------------------------------------------------------------
# verify


def test_verify_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n-max", "4")
    assert code == 0
    assert "all checks passed" in out
    assert "FAIL" not in out


def test_verify_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n-max", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert all(check["passed"] for check in data["checks"])


def test_verify_over_cap(capsys):
    code, _, err = run_cli(capsys, "verify", "--n-max", "11")
    assert code == 2 and "cap" in err


# ---------------------------------------------------------------------------
# Cross-cutting behaviour


def test_csv_rejected_outside_tabular_commands(capsys):
    code, _, _ = run_cli(capsys, "report", "123", "--format", "csv")
    assert code == 2
    code, _, _ = run_cli(capsys, "expect", "4", "--format", "csv")
    assert code == 2


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = run_cli(
        capsys, "dist", "3", "--format", "csv", "--out", str(target)
    )
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[0] == "n,m,count"


def test_byte_identical_reruns(capsys):
    first = run_cli(capsys, "dist", "5", "--format", "json", "--threads", "2")
    second = run_cli(capsys, "dist", "5", "--format", "json", "--threads", "3")
    assert first == second


def test_console_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "sepstat.cli", "expect", "4", "--kind", "any"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "11/6" in proc.stdout


def test_no_arguments_is_usage_error(capsys):
    code, _, _ = run_cli(capsys)
    assert code == 2


def test_verify_verbose_shows_rows(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n-max", "3", "--verbose")
    assert code == 0
    assert "vertical row n=3: {0: 2, 1: 4}" in out
