"""Kernel backend selection.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python ``_purepy`` module. Setting ``HYPERINT_PURE_PYTHON=1`` in the
environment forces the fallback.
"""

import os

from . import _purepy

if os.environ.get("HYPERINT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _purepy
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _purepy

BACKEND = "cython" if _impl is not _purepy else "python"

is_prime_u64 = _impl.is_prime_u64
rho_brent_u64 = _impl.rho_brent_u64
scan_squares = _impl.scan_squares
sieve_divisors = _impl.sieve_divisors

U64_LIMIT = 1 << 64
# |f(x)| must stay below this for the compiled scan to be exact.
SCAN_LIMIT = 1 << 62


def available_backends():
    """Map of backend name to module, for tests and benchmarks."""
    out = {"python": _purepy}
    try:
        from . import _speedups
    except ImportError:
        pass
    else:
        out["cython"] = _speedups
    return out
