"""Kernel selection: compiled extension when present, pure Python otherwise.

Set ``STEINPALF_PURE=1`` to force the pure-Python implementation.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if not os.environ.get("STEINPALF_PURE"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

crossings = _impl.crossings
winding_numbers = _impl.winding_numbers
interior_mask = _impl.interior_mask
rank_mod_p = _impl.rank_mod_p

# primes below 2**31 so the compiled kernel never overflows
RANK_PRIMES = (2147483629, 2147483587)


def rank_q(rows):
    """Rank over the rationals (max of ranks modulo two large primes)."""
    return max(rank_mod_p(rows, p) for p in RANK_PRIMES)
