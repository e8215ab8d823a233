"""Exact truncated power series in z with integer polynomial
coefficients in one marker variable, plus the generating functions for
the bond and vertical-separator statistics.

Everything is arbitrary-precision integer arithmetic; a series of
order N stores the coefficients of z^0..z^N exactly and arithmetic
never fabricates anything beyond the order. A z-exponent of -1 is
tolerated transiently (it arises while aligning the odd-length case of
the separator sum) but no public constructor returns one.
"""

from __future__ import annotations

from math import comb, factorial
from typing import Iterator, Mapping


class MarkerPoly:
    """An integer polynomial in the marker variable, stored densely
    with no trailing zeros.

    >>> MarkerPoly((6, 8, 2))
    MarkerPoly([6, 8, 2])
    >>> MarkerPoly((1, 1)) * MarkerPoly((1, 1))
    MarkerPoly([1, 2, 1])
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: tuple[int, ...] | list[int] = ()) -> None:
        end = len(coeffs)
        while end > 0 and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", tuple(coeffs[:end]))

    @classmethod
    def constant(cls, c: int) -> "MarkerPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, power: int) -> "MarkerPoly":
        return cls((0,) * power + (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.coeffs == (MarkerPoly.constant(other)).coeffs
        if isinstance(other, MarkerPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __getitem__(self, power: int) -> int:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    def __add__(self, other: "MarkerPoly") -> "MarkerPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return MarkerPoly(out)

    def __neg__(self) -> "MarkerPoly":
        return MarkerPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "MarkerPoly") -> "MarkerPoly":
        return self + (-other)

    def __mul__(self, other: "MarkerPoly | int") -> "MarkerPoly":
        if isinstance(other, int):
            return MarkerPoly(tuple(c * other for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return MarkerPoly(out)

    __rmul__ = __mul__

    def shifted(self, offset: int) -> "MarkerPoly":
        """Substitute marker -> marker + offset, expanded exactly."""
        if offset == 0 or not self.coeffs:
            return self
        out = [0] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if c:
                for j in range(k + 1):
                    out[j] += c * comb(k, j) * offset ** (k - j)
        return MarkerPoly(out)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"MarkerPoly({list(self.coeffs)})"


_ZERO = MarkerPoly()
_ONE = MarkerPoly((1,))


class BiSeries:
    """A truncated series sum_e coeff[e] * z^e with MarkerPoly
    coefficients, exact up to z^order. Treated as immutable."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Mapping[int, MarkerPoly] | None = None):
        if order < -1:
            raise ValueError(f"series order {order} out of range")
        clean: dict[int, MarkerPoly] = {}
        if coeffs:
            for e, poly in coeffs.items():
                if not isinstance(poly, MarkerPoly):
                    poly = MarkerPoly.constant(poly)
                if e < -1 or e > order:
                    raise ValueError(f"exponent {e} outside -1..{order}")
                if poly:
                    clean[e] = poly
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def zero(cls, order: int) -> "BiSeries":
        return cls(order)

    @classmethod
    def constant(cls, order: int, c: int = 1) -> "BiSeries":
        return cls(order, {0: MarkerPoly.constant(c)} if c else {})

    @property
    def min_shift(self) -> int:
        """Smallest retained exponent (0 for the zero series)."""
        return min(self.coeffs, default=0)

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BiSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __iter__(self) -> Iterator[tuple[int, MarkerPoly]]:
        return iter(sorted(self.coeffs.items()))

    def __repr__(self) -> str:
        terms = ", ".join(f"z^{e}: {list(p.coeffs)}" for e, p in self)
        return f"BiSeries(order={self.order}, {{{terms}}})"

    def __add__(self, other: "BiSeries") -> "BiSeries":
        return series_add(self, other)

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        return series_mul(self, other)


def _require_same_order(a: BiSeries, b: BiSeries) -> None:
    if a.order != b.order:
        raise ValueError(f"series orders differ: {a.order} vs {b.order}")


def series_add(a: BiSeries, b: BiSeries) -> BiSeries:
    _require_same_order(a, b)
    out = dict(a.coeffs)
    for e, poly in b.coeffs.items():
        s = out.get(e, _ZERO) + poly
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return BiSeries(a.order, out)


def series_scale(a: BiSeries, c: int) -> BiSeries:
    if c == 0:
        return BiSeries(a.order)
    return BiSeries(a.order, {e: poly * c for e, poly in a.coeffs.items()})


def series_mul(a: BiSeries, b: BiSeries) -> BiSeries:
    """Cauchy product in z (polynomial product in the marker),
    truncated at the common order. Negative shifts are not allowed
    here; they only ever feed the Hadamard product."""
    _require_same_order(a, b)
    if (a.coeffs and a.min_shift < 0) or (b.coeffs and b.min_shift < 0):
        raise ValueError("cannot multiply series with negative exponents")
    out: dict[int, MarkerPoly] = {}
    for e1, p1 in a.coeffs.items():
        for e2, p2 in b.coeffs.items():
            e = e1 + e2
            if e > a.order:
                continue
            prod = p1 * p2
            if prod:
                out[e] = out.get(e, _ZERO) + prod
    return BiSeries(a.order, {e: p for e, p in out.items() if p})


def hadamard(a: BiSeries, b: BiSeries) -> BiSeries:
    """Coefficient-wise product in z; exponents present in only one
    operand vanish.

    >>> x = BiSeries(2, {0: MarkerPoly((2,)), 1: MarkerPoly((3,)), 2: MarkerPoly((-4,))})
    >>> y = BiSeries(2, {0: MarkerPoly((5,)), 1: MarkerPoly((1,)), 2: MarkerPoly((7,))})
    >>> [coeff(hadamard(x, y), e)[0] for e in range(3)]
    [10, 3, -28]
    """
    _require_same_order(a, b)
    out: dict[int, MarkerPoly] = {}
    for e, p1 in a.coeffs.items():
        p2 = b.coeffs.get(e)
        if p2 is not None:
            prod = p1 * p2
            if prod:
                out[e] = prod
    return BiSeries(a.order, out)


def z_shift(a: BiSeries, k: int) -> BiSeries:
    """Multiply by z^k for k in {-1, +1}; the order adjusts with k.

    Shifting down requires a zero constant term (no exponent may drop
    below -1, and -1 is only for transient Hadamard operands).
    """
    if k not in (-1, 1):
        raise ValueError(f"shift must be -1 or +1, got {k}")
    if k == -1 and any(e <= -1 for e in a.coeffs):
        raise ValueError("cannot shift a series with a z^-1 term down")
    if k == -1 and 0 in a.coeffs:
        raise ValueError("cannot shift a series with a nonzero constant term down")
    return BiSeries(a.order + k, {e + k: poly for e, poly in a.coeffs.items()})


def truncate(a: BiSeries, new_order: int) -> BiSeries:
    """Restrict to exponents <= new_order (which must not exceed the
    current order: truncation never invents precision)."""
    if new_order > a.order:
        raise ValueError(f"cannot extend order {a.order} to {new_order}")
    return BiSeries(new_order, {e: p for e, p in a.coeffs.items() if e <= new_order})


def substitute_marker(a: BiSeries, offset: int) -> BiSeries:
    """Replace the marker variable t by t + offset in every coefficient."""
    return BiSeries(a.order, {e: poly.shifted(offset) for e, poly in a.coeffs.items()})


def coeff(a: BiSeries, n: int) -> MarkerPoly:
    """The z^n coefficient; beyond the truncation order is an error,
    not zero."""
    if not 0 <= n <= a.order:
        raise ValueError(f"exponent {n} outside the exact range 0..{a.order}")
    return a.coeffs.get(n, _ZERO)


def coeff2(a: BiSeries, n: int, m: int) -> int:
    return coeff(a, n)[m]


# ---------------------------------------------------------------------------
# The generating functions


def run_block_series(order: int) -> BiSeries:
    """The single-run factor z + sum_{j>=2} 2 z^j v^{j-1}: a length-1
    run contributes z, and each longer run of length j comes in an
    ascending and a descending copy carrying one marker per bond."""
    if order < 0:
        raise ValueError("order must be >= 0")
    out: dict[int, MarkerPoly] = {}
    if order >= 1:
        out[1] = _ONE
    for j in range(2, order + 1):
        out[j] = MarkerPoly.monomial(2, j - 1)
    return BiSeries(order, out)


def bond_marked_gf(order: int) -> BiSeries:
    """Permutations by size (z) and number of *marked* bonds (marker):
    sum over m of m! times the run factor to the m-th power. The m = 0
    term is the empty permutation, giving a constant term of 1."""
    f = run_block_series(order)
    acc = BiSeries.constant(order, 1)
    power = BiSeries.constant(order, 1)
    for m in range(1, order + 1):  # f^m starts at z^m, so m <= order suffices
        power = series_mul(power, f)
        acc = series_add(acc, series_scale(power, factorial(m)))
    return acc


def bond_gf(order: int) -> BiSeries:
    """Permutations by size and exact number of bonds: the marked
    series with marker -> marker - 1 (inclusion-exclusion)."""
    return substitute_marker(bond_marked_gf(order), -1)


def _run_block_sq(order: int) -> BiSeries:
    """The run factor evaluated at z^2 (each half-entry weighs z^2 so
    that the comb of two halves weighs z per entry)."""
    out: dict[int, MarkerPoly] = {}
    if order >= 2:
        out[2] = _ONE
    for j in range(2, order // 2 + 1):
        out[2 * j] = MarkerPoly.monomial(2, j - 1)
    return BiSeries(order, out)


def vertical_marked_gf(order: int) -> BiSeries:
    """Permutations by size and number of *marked* vertical separators.

    Even sizes pair the run-decompositions of the two comb halves with
    a plain Hadamard product; odd sizes shift the longer (odd) half
    down one z and the even half up one so their supports meet on odd
    exponents. Only the even double sum reaches z^0, so the constant
    term is 1 (the empty permutation).
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    n = order
    # the odd-part down-shift reads one exponent above n, so the half
    # powers are carried at internal order n + 1
    internal = n + 1
    q = _run_block_sq(internal)
    half_max = (n + 1) // 2  # a half of m runs occupies z^{2m} or more
    powers = [BiSeries.constant(internal, 1)]
    for _ in range(half_max):
        powers.append(series_mul(powers[-1], q))

    acc = BiSeries.zero(n)
    for m_odd in range(half_max + 1):
        for m_even in range(half_max + 1):
            weight = factorial(m_odd + m_even)
            even_term = hadamard(
                truncate(powers[m_odd], n), truncate(powers[m_even], n)
            )
            acc = series_add(acc, series_scale(even_term, weight))
            # the odd-size term z^-1 P_odd * z P_even; for m_odd = 0 the
            # supports are {-1} and {>=1}, identically zero, so skip it
            # and never materialize the negative exponent
            if m_odd >= 1 and 2 * m_even + 1 <= n:
                odd_term = hadamard(
                    z_shift(powers[m_odd], -1),
                    z_shift(truncate(powers[m_even], n - 1), +1),
                )
                acc = series_add(acc, series_scale(odd_term, weight))
    return acc


def vertical_sep_gf(order: int) -> BiSeries:
    """Permutations by size and exact number of vertical separators:
    the marked series with marker -> marker - 1. By the inverse
    symmetry this is also the distribution of horizontal separators."""
    return substitute_marker(vertical_marked_gf(order), -1)


# ---------------------------------------------------------------------------
# Export


def series_to_json(a: BiSeries) -> dict:
    """{"order": N, "coeffs": {"n": ["c0", "c1", ...]}} with big
    integers rendered as decimal strings."""
    return {
        "order": a.order,
        "coeffs": {
            str(e): [str(c) for c in poly.coeffs] for e, poly in a
        },
    }


def series_csv_rows(a: BiSeries) -> list[tuple[int, int, int]]:
    """One (n, m, count) row per nonzero coefficient."""
    rows = []
    for e, poly in a:
        for m, c in enumerate(poly.coeffs):
            if c:
                rows.append((e, m, c))
    return rows
