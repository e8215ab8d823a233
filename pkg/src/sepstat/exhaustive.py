"""Exhaustive desk-scale oracles over S_n and the exact expectation
formulas.

Everything here is the brute-force side of a dual-route design: the
sweeps recount, permutation by permutation, what the series module
claims in closed form, and the expectation formulas are checked
against literal averages. Counts are exact integers and expectations
exact rationals, so agreement is equality, never tolerance.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Optional

from . import config
from .perms import (
    Permutation,
    bond_count,
    children,
    inflate,
    inverse,
    is_king,
    reverse,
)
from .separators import (
    MarkedSepPermutation,
    comb_marked,
    decode_marked,
    encode_marked,
    enumerate_markings,
    has_knight_pair,
    horizontal_separator_positions,
    horizontal_separators,
    separator_count,
    split_marked,
    vertical_separator_positions,
    vertical_separators,
)
from .series import bond_gf, coeff, vertical_sep_gf

KINDS = ("vertical", "horizontal", "both", "any", "bonds")
EXPECTATION_KINDS = ("vertical", "both", "any")

_MAX_SEP_BLOCKS = (Permutation((3, 1, 4, 2)), Permutation((2, 4, 1, 3)))


def _check_cap(n: int) -> None:
    cap = config.enumeration_cap()
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > cap:
        raise ValueError(
            f"n={n} exceeds the enumeration cap {cap} "
            f"(set {config.ENV_MAX_N} to raise it)"
        )


def iterate_sn(n: int) -> Iterator[Permutation]:
    """All n! permutations of {1..n}, in lexicographic order.

    The cap is checked eagerly, before the stream is consumed.
    """
    _check_cap(n)
    return (Permutation(word) for word in itertools.permutations(range(1, n + 1)))


# ---------------------------------------------------------------------------
# The sweep: one pass per permutation over raw words


def _scan(word: tuple[int, ...]) -> tuple[int, int, int]:
    """(bond count, vertical bitmask, horizontal bitmask) of a word;
    masks are over values, bit v set when digit v separates."""
    n = len(word)
    b = 0
    for i in range(n - 1):
        if abs(word[i] - word[i + 1]) == 1:
            b += 1
    vmask = 0
    for i in range(1, n - 1):
        if abs(word[i - 1] - word[i + 1]) == 1:
            vmask |= 1 << word[i]
    pos = [0] * (n + 1)
    for i, v in enumerate(word):
        pos[v] = i
    hmask = 0
    for a in range(2, n):
        if abs(pos[a - 1] - pos[a + 1]) == 1:
            hmask |= 1 << a
    return b, vmask, hmask


def _sweep_chunk(n: int, firsts: tuple[int, ...]) -> dict[str, Counter]:
    """Tally all five statistics over the permutations of {1..n} whose
    first entry lies in ``firsts`` (the unit of parallel work)."""
    tallies: dict[str, Counter] = {kind: Counter() for kind in KINDS}
    t_v, t_h, t_b, t_a, t_bonds = (
        tallies["vertical"],
        tallies["horizontal"],
        tallies["both"],
        tallies["any"],
        tallies["bonds"],
    )
    values = range(1, n + 1)
    for first in firsts:
        rest = [v for v in values if v != first]
        for tail in itertools.permutations(rest):
            b, vm, hm = _scan((first,) + tail)
            t_bonds[b] += 1
            t_v[vm.bit_count()] += 1
            t_h[hm.bit_count()] += 1
            t_b[(vm & hm).bit_count()] += 1
            t_a[(vm | hm).bit_count()] += 1
    return tallies


def sweep(n: int, threads: int | None = 1) -> dict[str, Counter]:
    """Exhaustive tallies of all five statistics over S_n.

    ``threads`` > 1 partitions the work by first entry across worker
    processes; the merge is associative, so the result is identical
    for every worker count.
    """
    _check_cap(n)
    if n == 0:
        return {kind: Counter({0: 1}) for kind in KINDS}
    if threads is None:
        threads = os.cpu_count() or 1
    firsts = list(range(1, n + 1))
    if threads <= 1 or factorial(n) < 5040:  # pool overhead beats tiny jobs
        return _sweep_chunk(n, tuple(firsts))
    chunks = [tuple(firsts[i::threads]) for i in range(threads)]
    chunks = [c for c in chunks if c]
    merged: dict[str, Counter] = {kind: Counter() for kind in KINDS}
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        for part in pool.map(_sweep_chunk, itertools.repeat(n), chunks):
            for kind in KINDS:
                merged[kind].update(part[kind])
    return merged


@dataclass(frozen=True)
class DistTable:
    """Exhaustive distribution of one statistic over S_n."""

    n: int
    kind: str
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def mean(self) -> Fraction:
        return Fraction(
            sum(m * c for m, c in self.counts.items()), factorial(self.n)
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind,
            "counts": {str(m): c for m, c in sorted(self.counts.items())},
        }

    def csv_rows(self) -> list[tuple[int, int, int]]:
        return [(self.n, m, c) for m, c in sorted(self.counts.items())]


def distribution(n: int, kind: str, threads: int | None = 1) -> DistTable:
    """Exhaustive distribution of one statistic.

    >>> distribution(3, "vertical").counts
    {0: 2, 1: 4}
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {KINDS}")
    table = sweep(n, threads)[kind]
    return DistTable(n=n, kind=kind, counts=dict(sorted(table.items())))


# ---------------------------------------------------------------------------
# Separator-free permutations: two oracles that must agree


def separator_free_count(n: int, threads: int | None = 1) -> int:
    """Number of permutations of S_n with no separator of any type.

    Counted twice, via the separator sets and via the knight-move
    test (non-attacking empresses); a disagreement would mean a bug in
    one of the definitions and raises immediately.
    """
    _check_cap(n)
    if n == 0:
        return 1
    if threads is None:
        threads = os.cpu_count() or 1
    firsts = list(range(1, n + 1))
    if threads <= 1 or factorial(n) < 5040:
        return _sepfree_chunk(n, tuple(firsts))
    chunks = [tuple(firsts[i::threads]) for i in range(threads)]
    chunks = [c for c in chunks if c]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        return sum(pool.map(_sepfree_chunk, itertools.repeat(n), chunks))


def _sepfree_chunk(n: int, firsts: tuple[int, ...]) -> int:
    count = 0
    values = range(1, n + 1)
    for first in firsts:
        rest = [v for v in values if v != first]
        for tail in itertools.permutations(rest):
            p = Permutation((first,) + tail)
            by_sets = separator_count(p) == 0
            by_knight = not has_knight_pair(p)
            if by_sets != by_knight:
                raise RuntimeError(
                    f"separator-free oracles disagree on {p}: "
                    f"sets say {by_sets}, knight scan says {by_knight}"
                )
            count += by_sets
    return count


# ---------------------------------------------------------------------------
# Permutations in which every digit separates


def max_separator_perms(k: int) -> list[Permutation]:
    """All permutations of S_{4k} in which every digit is a separator:
    inflations of each pattern of S_k by length-4 blocks drawn from the
    two king patterns of S_4. The list has 2^k * k! entries.

    >>> [str(p) for p in max_separator_perms(1)]
    ['[3142]', '[2413]']
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    out: list[Permutation] = []
    for pattern_word in itertools.permutations(range(1, k + 1)):
        pattern = Permutation(pattern_word)
        for blocks in itertools.product(_MAX_SEP_BLOCKS, repeat=k):
            q = inflate(pattern, blocks)
            if separator_count(q) != q.n:  # structural guarantee; cheap to keep
                raise RuntimeError(f"constructed {q} has a non-separating digit")
            out.append(q)
    return out


# ---------------------------------------------------------------------------
# Expectations


def expectation_formula(n: int, kind: str) -> Fraction:
    """Closed-form expectation of a separator statistic over S_n.

    vertical: 2(n-2)/n; both types at once: 4(n-3)^2/(n(n-1)(n-2));
    any type: 4(n^3-6n^2+14n-13)/(n(n-1)(n-2)). For n < 3 there are no
    separators at all and the value is 0 by convention.
    """
    if kind not in EXPECTATION_KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {EXPECTATION_KINDS}")
    if n < 3:
        return Fraction(0)
    if kind == "vertical":
        return Fraction(2 * (n - 2), n)
    if kind == "both":
        return Fraction(4 * (n - 3) ** 2, n * (n - 1) * (n - 2))
    return Fraction(4 * (n**3 - 6 * n**2 + 14 * n - 13), n * (n - 1) * (n - 2))


def expectation_empirical(n: int, kind: str, threads: int | None = 1) -> Fraction:
    """The literal average of the statistic over all n! permutations."""
    if kind not in EXPECTATION_KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {EXPECTATION_KINDS}")
    table = sweep(n, threads)[kind]
    return Fraction(sum(m * c for m, c in table.items()), factorial(n))


def expectation_convergence_ok(n: int) -> bool:
    """Formula-level sanity for the limiting values 2 and 4: the
    vertical expectation misses 2 by exactly 4/n, and the total stays
    within 32/n of 4."""
    if n < 3:
        raise ValueError("convergence bounds apply for n >= 3")
    ev = expectation_formula(n, "vertical")
    ez = expectation_formula(n, "any")
    return abs(ev - 2) <= Fraction(4, n) and abs(ez - 4) < Fraction(32, n)


# ---------------------------------------------------------------------------
# Series-vs-enumeration verification


@dataclass
class VerificationReport:
    """Outcome of comparing series coefficients with exhaustive
    counts; ``mismatches`` holds (series, n, m, enumerated, series
    value) tuples, first differing entry first."""

    n_max: int
    passed: bool
    mismatches: list[tuple[str, int, int, int, int]]
    vertical_rows: dict[int, dict[int, int]]
    bond_rows: dict[int, dict[int, int]]

    @property
    def first_mismatch(self) -> Optional[tuple[str, int, int, int, int]]:
        return self.mismatches[0] if self.mismatches else None

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "passed": self.passed,
            "mismatches": [list(m) for m in self.mismatches],
        }


def _row_mismatches(
    name: str, n: int, row: dict[int, int], poly_row: dict[int, int]
) -> list[tuple[str, int, int, int, int]]:
    out = []
    for m in range(max(max(row, default=0), max(poly_row, default=0)) + 1):
        want = row.get(m, 0)
        got = poly_row.get(m, 0)
        if want != got:
            out.append((name, n, m, want, got))
    return out


def verify_gf_vs_brute(n_max: int, threads: int | None = 1) -> VerificationReport:
    """Check, for every n <= n_max, that the vertical-separator and
    bond series rows equal the exhaustive distributions, term by term.
    """
    _check_cap(n_max)
    h = vertical_sep_gf(n_max)
    b = bond_gf(n_max)
    mismatches: list[tuple[str, int, int, int, int]] = []
    vertical_rows: dict[int, dict[int, int]] = {}
    bond_rows: dict[int, dict[int, int]] = {}
    for n in range(n_max + 1):
        tables = sweep(n, threads)
        vrow = dict(sorted(tables["vertical"].items()))
        brow = dict(sorted(tables["bonds"].items()))
        vertical_rows[n] = vrow
        bond_rows[n] = brow
        hpoly = {m: c for m, c in enumerate(coeff(h, n).coeffs) if c}
        bpoly = {m: c for m, c in enumerate(coeff(b, n).coeffs) if c}
        mismatches.extend(_row_mismatches("vertical", n, vrow, hpoly))
        mismatches.extend(_row_mismatches("bonds", n, brow, bpoly))
    return VerificationReport(
        n_max=n_max,
        passed=not mismatches,
        mismatches=mismatches,
        vertical_rows=vertical_rows,
        bond_rows=bond_rows,
    )


# ---------------------------------------------------------------------------
# The full check suite behind `sepstat verify`


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def run_check_suite(n_max: int, threads: int | None = 1) -> list[CheckResult]:
    """Every structural invariant the library promises, at desk scale.

    Exhaustive-from-definition checks are capped at n = 7 (and the
    marked round-trips at n = 6) regardless of ``n_max``; the sweeps
    and series comparisons run all the way up to ``n_max``.
    """
    _check_cap(n_max)
    results: list[CheckResult] = []

    def add(name: str, passed: bool, detail: str) -> None:
        results.append(CheckResult(name, passed, detail))

    tables = {n: sweep(n, threads) for n in range(n_max + 1)}

    # series rows against the exhaustive tables
    h = vertical_sep_gf(n_max)
    b = bond_gf(n_max)
    bad_v: list[tuple] = []
    bad_b: list[tuple] = []
    for n in range(n_max + 1):
        vrow = dict(tables[n]["vertical"])
        brow = dict(tables[n]["bonds"])
        hrow = {m: c for m, c in enumerate(coeff(h, n).coeffs) if c}
        brow_series = {m: c for m, c in enumerate(coeff(b, n).coeffs) if c}
        bad_v.extend(_row_mismatches("vertical", n, vrow, hrow))
        bad_b.extend(_row_mismatches("bonds", n, brow, brow_series))
    add(
        "series-vs-enumeration (vertical separators)",
        not bad_v,
        f"n <= {n_max}" if not bad_v else f"first mismatch {bad_v[0]}",
    )
    add(
        "series-vs-enumeration (bonds)",
        not bad_b,
        f"n <= {n_max}" if not bad_b else f"first mismatch {bad_b[0]}",
    )

    sym_ok = all(
        tables[n]["vertical"] == tables[n]["horizontal"] for n in range(n_max + 1)
    )
    add("vertical/horizontal distributions identical", sym_ok, f"n <= {n_max}")

    small = min(n_max, 7)
    dual_ok = True
    rev_ok = True
    child_ok = True
    king_ok = True
    checked = 0
    for n in range(small + 1):
        for p in iterate_sn(n):
            checked += 1
            q = inverse(p)
            if horizontal_separators(q) != vertical_separator_positions(p):
                dual_ok = False
            if vertical_separators(q) != horizontal_separator_positions(p):
                dual_ok = False
            r = reverse(p)
            if vertical_separators(p) != vertical_separators(r):
                rev_ok = False
            if horizontal_separators(p) != horizontal_separators(r):
                rev_ok = False
            if n >= 1:
                kids = children(p)
                if len(kids) != n - bond_count(p):
                    child_ok = False
                if is_king(p):
                    king_kids = sum(1 for c in kids if is_king(c))
                    if king_kids != n - separator_count(p):
                        king_ok = False
    add("inverse duality of separator sets", dual_ok, f"{checked} permutations")
    add("reverse invariance of separator sets", rev_ok, f"{checked} permutations")
    add("children count is n - bonds", child_ok, f"n <= {small}")
    add("king children count is n - separators", king_ok, f"n <= {small}")

    free_ok = True
    free_detail = f"n <= {n_max}"
    try:
        for n in range(n_max + 1):
            count = separator_free_count(n, threads)
            if count != tables[n]["any"].get(0, 0):
                free_ok = False
                free_detail = f"count disagreement at n={n}"
    except RuntimeError as exc:
        free_ok = False
        free_detail = str(exc)
    add("separator-free dual oracle", free_ok, free_detail)

    exp_ok = True
    for n in range(3, n_max + 1):
        for kind in EXPECTATION_KINDS:
            empirical = Fraction(
                sum(m * c for m, c in tables[n][kind].items()), factorial(n)
            )
            if empirical != expectation_formula(n, kind):
                exp_ok = False
    add("expectation formulas match averages", exp_ok, f"3 <= n <= {n_max}")

    max_ok = True
    for n in range(1, n_max + 1):
        full = tables[n]["any"].get(n, 0)
        if n % 4 == 0:
            k = n // 4
            built = max_separator_perms(k)
            if full != (2**k) * factorial(k) or full != len(built):
                max_ok = False
            want = {p.entries for p in built}
            got = {
                p.entries
                for p in iterate_sn(n)
                if separator_count(p) == n
            }
            if want != got:
                max_ok = False
        elif full != 0:
            max_ok = False
    add("all-digits-separate structure", max_ok, f"n <= {n_max}")

    ladder = [8, 10, 100, 10**3, 10**6]
    conv_ok = all(expectation_convergence_ok(n) for n in ladder)
    add("expectation convergence (formula level)", conv_ok, f"n in {ladder}")

    marked_n = min(n_max, 6)
    enc_ok = True
    comb_ok = True
    conserved_ok = True
    for n in range(marked_n + 1):
        for p in iterate_sn(n):
            for mw in enumerate_markings(p):
                comp, sigma = encode_marked(mw)
                if decode_marked(comp, sigma) != mw:
                    enc_ok = False
            for subset in _vertical_mark_subsets(p):
                msp = MarkedSepPermutation(p, subset)
                odd, even = split_marked(msp)
                back = comb_marked(odd, even)
                if back != msp:
                    comb_ok = False
                if len(msp.marked_sep_positions) != len(odd.marked) + len(
                    even.marked
                ):
                    conserved_ok = False
    add("marked encode/decode round-trip", enc_ok, f"n <= {marked_n}")
    add("marked comb/split round-trip", comb_ok, f"n <= {marked_n}")
    add("mark conservation across comb", conserved_ok, f"n <= {marked_n}")

    return results


def _vertical_mark_subsets(p: Permutation) -> Iterator[frozenset[int]]:
    positions = sorted(vertical_separator_positions(p))
    for mask in range(1 << len(positions)):
        yield frozenset(
            pos for i, pos in enumerate(positions) if mask >> i & 1
        )
