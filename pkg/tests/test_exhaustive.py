import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from sepstat import config
from sepstat.exhaustive import (
    EXPECTATION_KINDS,
    KINDS,
    DistTable,
    distribution,
    expectation_convergence_ok,
    expectation_empirical,
    expectation_formula,
    iterate_sn,
    max_separator_perms,
    run_check_suite,
    separator_free_count,
    sweep,
    verify_gf_vs_brute,
)
from sepstat.perms import parse_permutation
from sepstat.separators import separator_count, separator_report


# ---------------------------------------------------------------------------
# Enumeration stream


def test_iterate_sn_counts():
    assert len(list(iterate_sn(3))) == 6
    empty = list(iterate_sn(0))
    assert len(empty) == 1 and empty[0].n == 0


def test_iterate_sn_distinct_at_8():
    seen = {p.entries for p in iterate_sn(8)}
    assert len(seen) == factorial(8)


def test_iterate_sn_respects_cap(monkeypatch):
    with pytest.raises(ValueError, match="cap"):
        list(iterate_sn(11))
    monkeypatch.setenv(config.ENV_MAX_N, "5")
    with pytest.raises(ValueError, match="cap"):
        list(iterate_sn(6))
    monkeypatch.setenv(config.ENV_MAX_N, "11")
    iterate_sn(11)  # raising the cap is allowed; don't consume the stream


# ---------------------------------------------------------------------------
# Distributions


def test_distribution_small_tables():
    assert distribution(3, "vertical").counts == {0: 2, 1: 4}
    assert distribution(3, "both").counts == {0: 6}
    assert distribution(0, "any").counts == {0: 1}
    assert distribution(3, "bonds").counts == {1: 4, 2: 2}


def test_distribution_rejects_unknown_kind():
    with pytest.raises(ValueError, match="unknown kind"):
        distribution(3, "diagonal")


@pytest.mark.parametrize("n", range(8))
def test_distribution_totals(n):
    tables = sweep(n)
    for kind in KINDS:
        assert sum(tables[kind].values()) == factorial(n)


@pytest.mark.parametrize("n", range(8))
def test_vertical_equals_horizontal(n):
    tables = sweep(n)
    assert tables["vertical"] == tables["horizontal"]


def test_sweep_matches_per_permutation_reports():
    # the fast scan and the definitional sets must tally identically
    for n in range(6):
        expected = {kind: {} for kind in ("vertical", "horizontal", "both", "any")}
        for p in iterate_sn(n):
            rep = separator_report(p)
            for kind, m in (
                ("vertical", len(rep.vertical)),
                ("horizontal", len(rep.horizontal)),
                ("both", len(rep.both)),
                ("any", rep.sep_count),
            ):
                expected[kind][m] = expected[kind].get(m, 0) + 1
        tables = sweep(n)
        for kind, want in expected.items():
            assert dict(tables[kind]) == want


def test_sweep_parallel_merge_is_deterministic():
    assert sweep(7, threads=2) == sweep(7, threads=1)
    assert sweep(7, threads=5) == sweep(7, threads=2)


def test_dist_table_helpers():
    table = distribution(3, "vertical")
    assert table.total == 6
    assert table.mean() == Fraction(2, 3)
    assert table.to_json() == {"n": 3, "kind": "vertical", "counts": {"0": 2, "1": 4}}
    assert table.csv_rows() == [(3, 0, 2), (3, 1, 4)]


# ---------------------------------------------------------------------------
# Separator-free counts (dual oracle)


def test_separator_free_small_values():
    assert separator_free_count(1) == 1
    assert separator_free_count(3) == 2


@pytest.mark.parametrize("n", range(8))
def test_separator_free_matches_sweep(n):
    assert separator_free_count(n) == sweep(n)["any"].get(0, 0)


def test_separator_free_parallel():
    assert separator_free_count(7, threads=2) == separator_free_count(7)


# ---------------------------------------------------------------------------
# All digits separate


def test_max_separator_k1():
    perms = max_separator_perms(1)
    assert {p.entries for p in perms} == {(3, 1, 4, 2), (2, 4, 1, 3)}


def test_max_separator_k2():
    perms = max_separator_perms(2)
    assert len(perms) == 8
    assert all(p.n == 8 and separator_count(p) == 8 for p in perms)


def test_max_separator_k3_count_and_property():
    perms = max_separator_perms(3)
    assert len(perms) == (2**3) * factorial(3)
    assert all(separator_count(p) == 12 for p in perms)


def test_max_separator_exhaustive_cross_check_n4():
    want = {p.entries for p in max_separator_perms(1)}
    got = {p.entries for p in iterate_sn(4) if separator_count(p) == 4}
    assert want == got


def test_max_separator_rejects_k0():
    with pytest.raises(ValueError):
        max_separator_perms(0)


# ---------------------------------------------------------------------------
# Expectations


def test_expectation_formula_spot_values():
    assert expectation_formula(4, "vertical") == 1
    assert expectation_formula(4, "both") == Fraction(1, 6)
    assert expectation_formula(4, "any") == Fraction(11, 6)
    assert expectation_formula(3, "vertical") == Fraction(2, 3)
    assert expectation_formula(1000000, "vertical") == Fraction(499999, 250000)


def test_expectation_below_three_is_zero():
    for n in (0, 1, 2):
        for kind in EXPECTATION_KINDS:
            assert expectation_formula(n, kind) == 0
            assert expectation_empirical(n, kind) == 0


def test_expectation_empirical_small():
    assert expectation_empirical(3, "vertical") == Fraction(2, 3)
    assert expectation_empirical(3, "both") == 0


@pytest.mark.parametrize("n", range(3, 8))
@pytest.mark.parametrize("kind", EXPECTATION_KINDS)
def test_formula_equals_empirical(n, kind):
    assert expectation_formula(n, kind) == expectation_empirical(n, kind)


@given(st.integers(min_value=3, max_value=10**12))
def test_total_equals_twice_vertical_minus_both(n):
    lhs = expectation_formula(n, "any")
    rhs = 2 * expectation_formula(n, "vertical") - expectation_formula(n, "both")
    assert lhs == rhs


def test_expectation_unknown_kind():
    with pytest.raises(ValueError):
        expectation_formula(4, "horizontal-only")


def test_convergence_sanity():
    assert all(expectation_convergence_ok(n) for n in (8, 50, 10**3, 10**6))
    # the vertical gap is exactly 4/n, so the bound is tight
    assert abs(expectation_formula(100, "vertical") - 2) == Fraction(4, 100)


# ---------------------------------------------------------------------------
# Verification harness


def test_verify_gf_vs_brute_passes():
    report = verify_gf_vs_brute(4)
    assert report.passed
    assert report.first_mismatch is None
    assert report.vertical_rows[3] == {0: 2, 1: 4}
    assert report.bond_rows[3] == {1: 4, 2: 2}


def test_verify_gf_vs_brute_trivial():
    report = verify_gf_vs_brute(0)
    assert report.passed
    assert report.vertical_rows[0] == {0: 1}


def test_verify_report_json():
    data = verify_gf_vs_brute(2).to_json()
    assert data == {"n_max": 2, "passed": True, "mismatches": []}


def test_run_check_suite_small():
    checks = run_check_suite(4)
    assert checks and all(c.passed for c in checks)
    names = {c.name for c in checks}
    assert "series-vs-enumeration (vertical separators)" in names
    assert "king children count is n - separators" in names
