"""Default limits for the command-line tools.

All tunables live here; the one environment override is SEPSTAT_MAX_N
for the enumeration cap. Nothing else reads the environment.
"""

from __future__ import annotations

import os

# Largest n accepted by the exhaustive sweeps (10! permutations is the
# biggest job a desk run should take on).
DEFAULT_MAX_N = 10

# Environment variable overriding DEFAULT_MAX_N.
ENV_MAX_N = "SEPSTAT_MAX_N"

# Default z-truncation order for the series commands, and the largest
# order the CLI accepts (the double Hadamard sum grows quadratically).
DEFAULT_ORDER = 12
MAX_ORDER = 64

# Default size ceiling for the `verify` command.
DEFAULT_VERIFY_N = 8


def enumeration_cap() -> int:
    """The current cap on exhaustive enumeration size."""
    raw = os.environ.get(ENV_MAX_N)
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ENV_MAX_N} must be an integer, got {raw!r}") from None
