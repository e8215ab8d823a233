"""Separator statistics on permutations.

Exact combinatorics of the separator statistic: detection on single
permutations, the marked-permutation series for its distribution,
closed-form expectations, and exhaustive enumeration oracles that
cross-check every closed form at desk scale.
"""

from .perms import (
    Direction,
    Permutation,
    Run,
    bond_count,
    bonds,
    children,
    comb,
    comb_split,
    delete_and_standardize,
    deletions,
    format_permutation,
    inflate,
    inverse,
    is_king,
    make_permutation,
    maximal_runs,
    parse_permutation,
    reverse,
    standardize,
)
from .separators import (
    ArrowedComposition,
    MarkedSepPermutation,
    MarkedWord,
    SeparatorReport,
    comb_marked,
    decode_marked,
    encode_marked,
    has_knight_pair,
    horizontal_separators,
    is_separator_free,
    parse_arrowed,
    separator_count,
    separator_report,
    split_marked,
    vertical_separators,
)
from .series import (
    BiSeries,
    MarkerPoly,
    bond_gf,
    bond_marked_gf,
    coeff,
    coeff2,
    hadamard,
    run_block_series,
    series_add,
    series_mul,
    substitute_marker,
    truncate,
    vertical_marked_gf,
    vertical_sep_gf,
    z_shift,
)
from .exhaustive import (
    DistTable,
    VerificationReport,
    distribution,
    expectation_empirical,
    expectation_formula,
    iterate_sn,
    max_separator_perms,
    separator_free_count,
    sweep,
    verify_gf_vs_brute,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
