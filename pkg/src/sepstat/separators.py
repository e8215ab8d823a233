"""Separator detection and the marked machinery.

A digit of a permutation is a *separator* when deleting it (and
standardizing) creates a 2-block that was not there before. This
happens in exactly two ways:

* vertical: the digit's positional neighbours hold values differing
  by 1 (deleting the middle brings them together);
* horizontal: for a digit a, the values a-1 and a+1 sit in adjacent
  positions (deleting a closes the value gap between them).

The marked side of this module encodes permutations with marked bonds
as arrowed compositions, and realizes the correspondence between
marked bonds of the odd/even halves and marked vertical separators of
their comb interleaving.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .perms import (
    Direction,
    Permutation,
    comb,
    comb_split,
    inflate,
    standardize,
)

# ---------------------------------------------------------------------------
# Separator sets


def vertical_separators(p: Permutation) -> frozenset[int]:
    """Values p_i (2 <= i <= n-1) whose positional neighbours differ by 1.

    >>> sorted(vertical_separators(Permutation((1, 3, 2, 4, 6, 5, 8, 7, 9))))
    [2, 3, 6, 7]
    """
    e = p.entries
    return frozenset(
        e[i] for i in range(1, len(e) - 1) if abs(e[i - 1] - e[i + 1]) == 1
    )


def vertical_separator_positions(p: Permutation) -> frozenset[int]:
    """Positions of the vertical separators (the comb machinery is
    positional, so this view is provided alongside the value set)."""
    e = p.entries
    return frozenset(
        i + 1 for i in range(1, len(e) - 1) if abs(e[i - 1] - e[i + 1]) == 1
    )


def horizontal_separators(p: Permutation) -> frozenset[int]:
    """Values a (2 <= a <= n-1) with a-1 and a+1 in adjacent positions.

    >>> sorted(horizontal_separators(Permutation((1, 3, 2, 4, 6, 5, 8, 7, 9))))
    [2, 3, 5, 8]
    """
    n = p.n
    pos = [0] * (n + 1)
    for i, v in enumerate(p.entries, start=1):
        pos[v] = i
    return frozenset(a for a in range(2, n) if abs(pos[a - 1] - pos[a + 1]) == 1)


def horizontal_separator_positions(p: Permutation) -> frozenset[int]:
    return frozenset(p.position_of(a) for a in horizontal_separators(p))


@dataclass(frozen=True)
class SeparatorReport:
    """Separator sets of one permutation; ``both`` is the intersection
    and ``sep_count`` the size of the union."""

    vertical: frozenset[int]
    horizontal: frozenset[int]
    both: frozenset[int]
    sep_count: int


def separator_report(p: Permutation) -> SeparatorReport:
    v = vertical_separators(p)
    h = horizontal_separators(p)
    return SeparatorReport(
        vertical=v, horizontal=h, both=v & h, sep_count=len(v | h)
    )


def separator_count(p: Permutation) -> int:
    return len(vertical_separators(p) | horizontal_separators(p))


def is_separator_free(p: Permutation) -> bool:
    """True iff no digit is a separator of either type.

    Equivalent to the permutation matrix carrying n non-attacking
    empresses (rook + knight); :func:`has_knight_pair` is the
    independent oracle for that reading.
    """
    return separator_count(p) == 0


def has_knight_pair(p: Permutation) -> bool:
    """True iff two entries sit a knight's move apart.

    Rook attacks are impossible in a permutation matrix, so this is
    the whole empress-attack test: offsets (1, 2) and (2, 1) in
    (position, value) distance.
    """
    e = p.entries
    n = len(e)
    for i in range(n - 1):
        if abs(e[i] - e[i + 1]) == 2:
            return True
        if i + 2 < n and abs(e[i] - e[i + 2]) == 1:
            return True
    return False


# ---------------------------------------------------------------------------
# Marked words and arrowed compositions


def word_bonds(values: Sequence[int]) -> frozenset[int]:
    """Adjacent-pair indices i of a word with |w_i - w_{i+1}| = 1.

    Words need not use {1..k}; bonds are value-difference bonds within
    the word itself (comb halves are not standardized).
    """
    return frozenset(
        i + 1 for i in range(len(values) - 1) if abs(values[i] - values[i + 1]) == 1
    )


@dataclass(frozen=True)
class MarkedWord:
    """A word of distinct positive integers with a chosen subset of its
    bonds marked; ``marked`` holds 1-indexed adjacent-pair indices."""

    values: tuple[int, ...]
    marked: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if len(set(self.values)) != len(self.values):
            raise ValueError("marked word values must be distinct")
        if any(v < 1 for v in self.values):
            raise ValueError("marked word values must be positive")
        legal = word_bonds(self.values)
        for i in self.marked:
            if i not in legal:
                raise ValueError(f"marked index {i} is not a bond of the word")

    @property
    def k(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ArrowedComposition:
    """A composition whose parts greater than 1 carry an up/down arrow.

    Parts are (size, direction) pairs; a part of size 1 has direction
    NONE and larger parts are UP or DOWN.
    """

    parts: tuple[tuple[int, Direction], ...]

    def __post_init__(self) -> None:
        for size, direction in self.parts:
            if size < 1:
                raise ValueError(f"composition part {size} must be >= 1")
            if (direction is Direction.NONE) != (size == 1):
                raise ValueError(
                    f"part of size {size} must carry an arrow iff size > 1"
                )

    @property
    def total(self) -> int:
        return sum(size for size, _ in self.parts)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def compact(self) -> str:
        """Render as e.g. "1,2↑,1,1,3↓,1"."""
        arrow = {Direction.UP: "↑", Direction.DOWN: "↓", Direction.NONE: ""}
        return ",".join(f"{size}{arrow[d]}" for size, d in self.parts)

    def __str__(self) -> str:
        return f"({self.compact()})"


def parse_arrowed(text: str) -> ArrowedComposition:
    """Parse the compact form "1,3↓,1" (also accepts u/d suffixes)."""
    s = text.strip().strip("()")
    if not s:
        return ArrowedComposition(())
    parts: list[tuple[int, Direction]] = []
    for piece in s.split(","):
        piece = piece.strip()
        direction = Direction.NONE
        if piece.endswith(("↑", "u", "U")):
            direction = Direction.UP
            piece = piece[:-1]
        elif piece.endswith(("↓", "d", "D")):
            direction = Direction.DOWN
            piece = piece[:-1]
        parts.append((int(piece), direction))
    return ArrowedComposition(tuple(parts))


@dataclass(frozen=True)
class MarkedSepPermutation:
    """A permutation with a chosen subset of its vertical-separator
    positions marked (rendered with hats in the worked examples)."""

    perm: Permutation
    marked_sep_positions: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        e = self.perm.entries
        for i in self.marked_sep_positions:
            if not 2 <= i <= len(e) - 1 or abs(e[i - 2] - e[i]) != 1:
                raise ValueError(
                    f"position {i} is not a vertical separator position"
                )


# ---------------------------------------------------------------------------
# Encoding marked permutations as arrowed compositions


def encode_marked(mw: MarkedWord) -> tuple[ArrowedComposition, Permutation]:
    """Split a marked permutation into its maximal marked runs.

    Returns the arrowed composition of run lengths/directions together
    with the relative order of the runs (standardization of one
    representative per run; the minimum is used, and any choice gives
    the same answer because runs are value-contiguous).

    >>> comp, sigma = encode_marked(
    ...     MarkedWord((2, 4, 5, 6, 1, 9, 8, 7, 3), frozenset({2, 6, 7})))
    >>> comp.compact(), sigma
    ('1,2↑,1,1,3↓,1', Permutation([2, 4, 5, 1, 6, 3]))
    """
    word = Permutation(mw.values)  # must be a permutation of {1..n}
    e = word.entries
    parts: list[tuple[int, Direction]] = []
    reps: list[int] = []
    i = 0
    while i < len(e):
        j = i
        while j + 1 < len(e) and (j + 1) in mw.marked:
            j += 1
        length = j - i + 1
        if length == 1:
            direction = Direction.NONE
        elif e[i + 1] > e[i]:
            direction = Direction.UP
        else:
            direction = Direction.DOWN
        parts.append((length, direction))
        reps.append(min(e[i : j + 1]))
        i = j + 1
    return ArrowedComposition(tuple(parts)), standardize(reps)


def decode_marked(comp: ArrowedComposition, sigma: Permutation) -> MarkedWord:
    """Inverse of :func:`encode_marked`: inflate ``sigma`` by monotone
    runs described by ``comp`` and mark every intra-run adjacency.

    >>> mw = decode_marked(parse_arrowed("1,3↓,1,1,2↑"), Permutation((3, 4, 2, 1, 5)))
    >>> mw.values, sorted(mw.marked)
    ((3, 6, 5, 4, 2, 1, 7, 8), [2, 3, 7])
    """
    if sigma.n != comp.num_parts:
        raise ValueError(
            f"permutation of {sigma.n} runs does not match "
            f"{comp.num_parts} composition parts"
        )
    if comp.num_parts == 0:
        return MarkedWord((), frozenset())
    blocks = []
    for size, direction in comp.parts:
        if direction is Direction.DOWN:
            blocks.append(Permutation(tuple(range(size, 0, -1))))
        else:
            blocks.append(Permutation(tuple(range(1, size + 1))))
    word = inflate(sigma, blocks)
    marked: set[int] = set()
    offset = 0
    for size, _ in comp.parts:
        marked.update(range(offset + 1, offset + size))
        offset += size
    return MarkedWord(word.entries, frozenset(marked))


def enumerate_markings(p: Permutation) -> list[MarkedWord]:
    """All 2^(number of bonds) markings of a permutation's bonds,
    in a deterministic order."""
    bond_list = sorted(word_bonds(p.entries))
    out = []
    for mask in range(1 << len(bond_list)):
        chosen = frozenset(
            b for pos, b in enumerate(bond_list) if mask >> pos & 1
        )
        out.append(MarkedWord(p.entries, chosen))
    return out


# ---------------------------------------------------------------------------
# Marked combs: bonds of the halves <-> vertical separators of the whole


def comb_marked(odd: MarkedWord, even: MarkedWord) -> MarkedSepPermutation:
    """Interleave marked halves; each marked bond of a half flags the
    entry of the other half sitting between its endpoints.

    >>> msp = comb_marked(MarkedWord((3, 6, 5, 4), frozenset({2, 3})),
    ...                   MarkedWord((2, 1, 7, 8), frozenset({3})))
    >>> msp.perm, sorted(msp.marked_sep_positions)
    (Permutation([3, 2, 6, 1, 5, 7, 4, 8]), [4, 6, 7])
    """
    p = comb(odd.values, even.values)
    marked = frozenset({2 * i for i in odd.marked} | {2 * i + 1 for i in even.marked})
    return MarkedSepPermutation(p, marked)


def split_marked(msp: MarkedSepPermutation) -> tuple[MarkedWord, MarkedWord]:
    """Inverse of :func:`comb_marked`: split into halves and turn each
    marked separator back into the bond of the opposite-parity half.
    """
    odd_values, even_values = comb_split(msp.perm)
    odd_marked: set[int] = set()
    even_marked: set[int] = set()
    for i in msp.marked_sep_positions:
        if i % 2 == 0:
            odd_marked.add(i // 2)
        else:
            even_marked.add(i // 2)
    return (
        MarkedWord(odd_values, frozenset(odd_marked)),
        MarkedWord(even_values, frozenset(even_marked)),
    )


# ---------------------------------------------------------------------------
# Serialization


def marked_word_to_json(mw: MarkedWord) -> dict:
    return {"perm": list(mw.values), "marked_bonds": sorted(mw.marked)}


def marked_word_from_json(data: dict) -> MarkedWord:
    return MarkedWord(tuple(data["perm"]), frozenset(data["marked_bonds"]))


def marked_sep_to_json(msp: MarkedSepPermutation) -> dict:
    return {
        "perm": list(msp.perm.entries),
        "marked_seps": sorted(msp.marked_sep_positions),
    }


def marked_sep_from_json(data: dict) -> MarkedSepPermutation:
    return MarkedSepPermutation(
        Permutation(tuple(data["perm"])), frozenset(data["marked_seps"])
    )


_DIRECTION_JSON = {Direction.UP: "up", Direction.DOWN: "down", Direction.NONE: ""}
_DIRECTION_FROM_JSON = {v: k for k, v in _DIRECTION_JSON.items()}


def arrowed_to_json(comp: ArrowedComposition) -> list[list[str]]:
    return [[str(size), _DIRECTION_JSON[d]] for size, d in comp.parts]


def arrowed_from_json(data: Iterable[Sequence[str]]) -> ArrowedComposition:
    return ArrowedComposition(
        tuple((int(size), _DIRECTION_FROM_JSON[d]) for size, d in data)
    )
