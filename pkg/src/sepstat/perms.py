"""Permutations in one-line notation over {1..n} and the structural
operations the separator statistic is built on: bonds, maximal runs,
deletion with standardization, one-level containment children,
inflation, and the odd/even comb interleaving.

Positions and values are both 1-indexed throughout, matching the usual
one-line conventions; no 0-indexed view is exposed. The empty
permutation (n = 0) is a valid value and acts as the counting unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence


class Direction(Enum):
    """Orientation of a run, or of an arrowed-composition part."""

    UP = "up"
    DOWN = "down"
    NONE = "none"  # iff the run/part has length 1

    def __repr__(self) -> str:
        return f"Direction.{self.name}"


@dataclass(frozen=True)
class Run:
    """A maximal segment of adjacent entries stepping by +1 or -1.

    ``start`` is the 1-indexed position of the first entry. A run of
    length 1 has direction NONE; longer runs are UP or DOWN (mixed
    steps are impossible since values are distinct).
    """

    start: int
    length: int
    direction: Direction


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of {1..n}, stored as its one-line word.

    Construction validates the bijection invariant; use
    :func:`make_permutation` or :func:`parse_permutation` for the
    friendlier entry points.

    >>> Permutation((5, 3, 2, 4, 1)).n
    5
    >>> Permutation((5, 3, 2, 4, 1))[1]
    5
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        seen = [False] * (n + 1)
        for v in self.entries:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError(f"permutation entries must be integers, got {v!r}")
            if not 1 <= v <= n:
                raise ValueError(f"value {v} outside 1..{n}")
            if seen[v]:
                raise ValueError(f"duplicate value {v}")
            seen[v] = True

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, pos: int) -> int:
        """Entry at 1-indexed position ``pos``."""
        if not 1 <= pos <= len(self.entries):
            raise IndexError(f"position {pos} outside 1..{len(self.entries)}")
        return self.entries[pos - 1]

    def position_of(self, value: int) -> int:
        """1-indexed position at which ``value`` occurs."""
        if not 1 <= value <= len(self.entries):
            raise ValueError(f"value {value} outside 1..{len(self.entries)}")
        return self.entries.index(value) + 1

    def __str__(self) -> str:
        return format_permutation(self)

    def __repr__(self) -> str:
        return f"Permutation({list(self.entries)})"


def make_permutation(values: Iterable[int]) -> Permutation:
    """Validate ``values`` as a bijection on {1..n} and wrap it.

    >>> make_permutation([5, 3, 2, 4, 1])
    Permutation([5, 3, 2, 4, 1])
    >>> make_permutation([])
    Permutation([])
    """
    return Permutation(tuple(values))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def descending(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def format_permutation(p: Permutation) -> str:
    """One-line rendering: compact digits for n <= 9, spaced otherwise."""
    if p.n == 0:
        return "[]"
    if p.n <= 9:
        return "[" + "".join(str(v) for v in p.entries) + "]"
    return "[" + " ".join(str(v) for v in p.entries) + "]"


def parse_permutation(text: str) -> Permutation:
    """Parse a one-line word.

    Accepts compact digit strings ("53241", n <= 9 only), delimited
    forms ("5 3 2 4 1", "5,3,2,4,1"), and JSON-ish bracketed arrays.
    The presence of a delimiter selects the delimited reading.

    >>> parse_permutation("53241").entries
    (5, 3, 2, 4, 1)
    >>> parse_permutation("10,2,3,4,5,6,7,8,9,1").n
    10
    """
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1].strip()
    if not s:
        return Permutation(())
    if any(c in s for c in ", \t"):
        pieces = [piece for piece in s.replace(",", " ").split() if piece]
    else:
        pieces = list(s)
    try:
        values = [int(piece) for piece in pieces]
    except ValueError:
        raise ValueError(f"cannot parse permutation from {text!r}") from None
    return make_permutation(values)


def standardize(values: Sequence[int]) -> Permutation:
    """Relabel distinct values order-isomorphically onto {1..k}.

    >>> standardize((2, 4, 6, 1, 7, 3))
    Permutation([2, 4, 5, 1, 6, 3])
    """
    if len(set(values)) != len(values):
        raise ValueError("standardization requires distinct values")
    rank = {v: r for r, v in enumerate(sorted(values), start=1)}
    return Permutation(tuple(rank[v] for v in values))


# ---------------------------------------------------------------------------
# Bonds and runs


def bonds(p: Permutation) -> frozenset[int]:
    """Positions i with |p_i - p_{i+1}| = 1.

    >>> sorted(bonds(Permutation((4, 5, 1, 8, 7, 6, 2, 3))))
    [1, 4, 5, 7]
    """
    e = p.entries
    return frozenset(i + 1 for i in range(len(e) - 1) if abs(e[i] - e[i + 1]) == 1)


def bond_count(p: Permutation) -> int:
    e = p.entries
    return sum(1 for i in range(len(e) - 1) if abs(e[i] - e[i + 1]) == 1)


def maximal_runs(p: Permutation) -> list[Run]:
    """Partition positions 1..n into maximal runs, left to right."""
    e = p.entries
    runs: list[Run] = []
    i = 0
    while i < len(e):
        j = i
        # consecutive bonds cannot change direction (the value would
        # have to repeat), so extending greedily stays monotone
        while j + 1 < len(e) and abs(e[j] - e[j + 1]) == 1:
            j += 1
        length = j - i + 1
        if length == 1:
            direction = Direction.NONE
        elif e[i + 1] > e[i]:
            direction = Direction.UP
        else:
            direction = Direction.DOWN
        runs.append(Run(start=i + 1, length=length, direction=direction))
        i = j + 1
    return runs


def is_king(p: Permutation) -> bool:
    """True iff the permutation has no bonds (non-attacking kings)."""
    return bond_count(p) == 0


# ---------------------------------------------------------------------------
# Symmetries


def inverse(p: Permutation) -> Permutation:
    """The inverse permutation q, with q[p_i] = i.

    >>> inverse(Permutation((3, 1, 4, 2)))
    Permutation([2, 4, 1, 3])
    """
    out = [0] * p.n
    for i, v in enumerate(p.entries, start=1):
        out[v - 1] = i
    return Permutation(tuple(out))


def reverse(p: Permutation) -> Permutation:
    return Permutation(tuple(reversed(p.entries)))


# ---------------------------------------------------------------------------
# Deletion and containment children


def delete_and_standardize(p: Permutation, pos: int) -> Permutation:
    """Remove the entry at ``pos`` and close the value gap.

    >>> delete_and_standardize(Permutation((5, 3, 2, 4, 1)), 1)
    Permutation([3, 2, 4, 1])
    """
    if p.n < 1:
        raise ValueError("cannot delete from the empty permutation")
    if not 1 <= pos <= p.n:
        raise IndexError(f"position {pos} outside 1..{p.n}")
    removed = p.entries[pos - 1]
    rest = p.entries[: pos - 1] + p.entries[pos:]
    return Permutation(tuple(v - 1 if v > removed else v for v in rest))


def deletions(p: Permutation) -> list[Permutation]:
    """All one-entry deletions in position order, duplicates kept.

    Duplicates arise exactly at bonds: deleting either end of a bond
    yields the same child.
    """
    return [delete_and_standardize(p, i) for i in range(1, p.n + 1)]


def children(p: Permutation) -> frozenset[Permutation]:
    """The distinct permutations one level down in the containment
    order; there are exactly n - (number of bonds) of them.

    >>> sorted(str(c) for c in children(Permutation((5, 3, 2, 4, 1))))
    ['[3241]', '[4213]', '[4231]', '[4321]']
    """
    if p.n < 1:
        raise ValueError("the empty permutation has no children")
    return frozenset(deletions(p))


# ---------------------------------------------------------------------------
# Inflation and the comb interleaving


def inflate(pattern: Permutation, blocks: Sequence[Permutation]) -> Permutation:
    """Replace the i-th entry of ``pattern`` by a contiguous block
    order-isomorphic to ``blocks[i-1]``; block value ranges stack in
    the order of the pattern's values.

    >>> inflate(Permutation((2, 4, 1, 3)),
    ...         [Permutation(t) for t in [(2, 1, 3), (2, 1), (1, 3, 2), (1,)]])
    Permutation([5, 4, 6, 9, 8, 1, 3, 2, 7])
    """
    k = pattern.n
    if k == 0 or len(blocks) == 0:
        raise ValueError("inflation requires a nonempty pattern and block list")
    if len(blocks) != k:
        raise ValueError(f"pattern has {k} entries but {len(blocks)} blocks given")
    if any(b.n == 0 for b in blocks):
        raise ValueError("inflation blocks must be nonempty")
    # value interval of the block in slot i is the pattern.entries[i]-th
    # lowest; its base offset is the total size of lower-ranked blocks
    size_by_rank = [0] * (k + 1)
    for i, r in enumerate(pattern.entries):
        size_by_rank[r] = blocks[i].n
    base_by_rank = [0] * (k + 1)
    acc = 0
    for r in range(1, k + 1):
        base_by_rank[r] = acc
        acc += size_by_rank[r]
    out: list[int] = []
    for i, r in enumerate(pattern.entries):
        base = base_by_rank[r]
        out.extend(base + v for v in blocks[i].entries)
    return Permutation(tuple(out))


def comb(odd: Sequence[int], even: Sequence[int]) -> Permutation:
    """Interleave two words into odd and even positions.

    The halves must satisfy |odd| = |even| or |odd| = |even| + 1 and
    jointly use each value of {1..n} exactly once.

    >>> comb((3, 6, 5, 4), (2, 1, 7, 8))
    Permutation([3, 2, 6, 1, 5, 7, 4, 8])
    """
    if len(odd) not in (len(even), len(even) + 1):
        raise ValueError(
            f"comb halves of sizes {len(odd)} and {len(even)} do not interleave"
        )
    out: list[int] = []
    for i in range(len(even)):
        out.append(odd[i])
        out.append(even[i])
    if len(odd) > len(even):
        out.append(odd[-1])
    return make_permutation(out)


def comb_split(p: Permutation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The odd-position and even-position subwords.

    >>> comb_split(Permutation((2, 7, 1, 8, 6, 3, 5, 4, 9)))
    ((2, 1, 6, 5, 9), (7, 8, 3, 4))
    """
    return p.entries[0::2], p.entries[1::2]
