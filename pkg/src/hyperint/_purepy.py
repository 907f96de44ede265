"""Pure-Python versions of the compiled kernels in ``_speedups.pyx``.

Both modules must agree result-for-result; ``tests/test_kernels.py`` runs
them side by side.
"""

from itertools import product
from math import gcd, isqrt

_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime_u64(n):
    """Deterministic Miller-Rabin for ``0 <= n < 2**64``."""
    if n < 2:
        return False
    for p in _BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while not d & 1:
        d >>= 1
        s += 1
    for a in _BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rho_brent_u64(n, c, y0, max_iter):
    """One Pollard-Brent run on ``x -> x*x + c (mod n)``.

    Returns a divisor ``1 < g <= n`` (``g == n``: retry with another ``c``),
    or 0 when ``max_iter`` squarings were spent without result.
    """
    y = y0 % n
    x = ys = 0
    q = g = r = 1
    m = 128
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        spent += r
        k = 0
        while k < r and g == 1:
            ys = y
            lim = min(m, r - k)
            for _ in range(lim):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
            spent += lim
        r <<= 1
        if g == 1 and spent > max_iter:
            return 0
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def scan_squares(coeffs, lo, hi):
    """All ``(x, y)`` with ``lo <= x <= hi``, ``y >= 0`` and ``f(x) == y*y``."""
    rev = coeffs[::-1]
    out = []
    for x in range(lo, hi + 1):
        v = 0
        for c in rev:
            v = v * x + c
        if v < 0:
            continue
        r = isqrt(v)
        if r * r == v:
            out.append((x, r))
    return out


def _half(exps, pres, moduli):
    """``(k_tuple, residues)`` for every divisor of one half, odometer order."""
    out = []
    for ks in product(*(range(e + 1) for e in exps)):
        res = [1 % q for q in moduli]
        for kk, row in zip(ks, pres):
            if kk:
                res = [r * pow(p, kk, q) % q for r, p, q in zip(res, row, moduli)]
        out.append((ks, res))
    return out


def sieve_divisors(exps, pres, moduli, ok):
    """Filter the divisors ``prod p_i**k_i`` (``0 <= k_i <= exps[i]``) by residues.

    ``pres[i][j]`` is ``p_i mod moduli[j]``; ``ok[j]`` maps each residue of
    the divisor mod ``moduli[j]`` to a bit mask. Survivors are the divisors
    whose masks AND to something nonzero, as ``(k_tuple, mask)`` pairs in
    odometer order (last index fastest).
    """
    if not moduli:
        raise ValueError("need at least one modulus")
    for q, table in zip(moduli, ok):
        if not 0 < q < 65536:
            raise ValueError("moduli must lie in [1, 2**16)")
        if len(table) != q:
            raise ValueError("ok table length must equal its modulus")
    tau = 1
    for e in exps:
        tau *= e + 1
    half, split = 1, 0
    while split < len(exps) and half * half < tau:
        half *= exps[split] + 1
        split += 1
    left = _half(exps[:split], pres[:split], moduli)
    right = _half(exps[split:], pres[split:], moduli)
    checks = list(zip(ok, moduli, range(len(moduli))))
    out = []
    for ka, ra in left:
        for kb, rb in right:
            mask = 3
            for table, q, j in checks:
                mask &= table[ra[j] * rb[j] % q]
                if not mask:
                    break
            if mask:
                out.append((ka + kb, mask))
    return out
