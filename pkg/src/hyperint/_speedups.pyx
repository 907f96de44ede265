# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for machine-word operands.

Same signatures and results as :mod:`hyperint._purepy`; callers are
responsible for range checks (``n < 2**64`` for the modular routines,
``|f(x)| < 2**62`` over the whole range for :func:`scan_squares`).
"""

from libc.math cimport sqrt
from libc.stdlib cimport calloc, free

ctypedef unsigned long long u64
ctypedef long long i64

cdef extern from *:
    """
    typedef unsigned __int128 hyperint_u128;
    """
    ctypedef unsigned long long u128 "hyperint_u128"


cdef inline u64 _mulmod(u64 a, u64 b, u64 m) nogil:
    return <u64>((<u128>a * b) % m)


cdef inline u64 _step(u64 y, u64 c, u64 n) nogil:
    return <u64>((<u128>_mulmod(y, y, n) + c) % n)


cdef inline u64 _powmod(u64 a, u64 e, u64 m) nogil:
    cdef u64 r = 1
    a %= m
    while e:
        if e & 1:
            r = _mulmod(r, a, m)
        a = _mulmod(a, a, m)
        e >>= 1
    return r


cdef inline u64 _gcd(u64 a, u64 b) nogil:
    cdef u64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef u64[12] _BASES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


cdef bint _is_prime(u64 n) nogil:
    cdef u64 d, x, a
    cdef int s, i, j
    cdef bint composite
    if n < 2:
        return False
    for i in range(12):
        if n == _BASES[i]:
            return True
        if n % _BASES[i] == 0:
            return False
    d = n - 1
    s = 0
    while (d & 1) == 0:
        d >>= 1
        s += 1
    for i in range(12):
        a = _BASES[i]
        x = _powmod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        composite = True
        for j in range(s - 1):
            x = _mulmod(x, x, n)
            if x == n - 1:
                composite = False
                break
        if composite:
            return False
    return True


def is_prime_u64(u64 n):
    """Deterministic Miller-Rabin for ``0 <= n < 2**64``."""
    return _is_prime(n)


cdef u64 _rho(u64 n, u64 c, u64 y0, u64 max_iter) nogil:
    cdef u64 y = y0 % n, x = 0, ys = 0, q = 1, g = 1, diff
    cdef u64 r = 1, k, i, lim, spent = 0
    cdef u64 m = 128
    while g == 1:
        x = y
        for i in range(r):
            y = _step(y, c, n)
        spent += r
        k = 0
        while k < r and g == 1:
            ys = y
            lim = m if r - k > m else r - k
            for i in range(lim):
                y = _step(y, c, n)
                diff = x - y if x > y else y - x
                q = _mulmod(q, diff, n)
            g = _gcd(q, n)
            k += m
            spent += lim
        r <<= 1
        if g == 1 and spent > max_iter:
            return 0
    if g == n:
        while True:
            ys = _step(ys, c, n)
            diff = x - ys if x > ys else ys - x
            g = _gcd(diff, n)
            if g > 1:
                break
    return g


def rho_brent_u64(u64 n, u64 c, u64 y0, u64 max_iter):
    """One Pollard-Brent run on ``x -> x*x + c (mod n)``.

    Returns a divisor ``g`` with ``1 < g <= n`` (``g == n`` means the run
    failed and the caller should retry with another ``c``), or 0 when
    ``max_iter`` squarings were spent without result.
    """
    cdef u64 g
    with nogil:
        g = _rho(n, c, y0, max_iter)
    return g


def scan_squares(coeffs, i64 lo, i64 hi):
    """All ``(x, y)`` with ``lo <= x <= hi``, ``y >= 0`` and ``f(x) == y*y``.

    ``coeffs`` are low-to-high; every value of ``f`` on the range must fit
    comfortably in a signed 64-bit word.
    """
    cdef int deg = len(coeffs) - 1
    cdef i64[32] c
    cdef i64 x, v, r
    cdef int i
    if deg >= 32:
        raise ValueError("degree too large for the compiled scan")
    for i in range(deg + 1):
        c[i] = coeffs[i]
    out = []
    if lo > hi:
        return out
    x = lo
    while True:
        v = c[deg]
        for i in range(deg - 1, -1, -1):
            v = v * x + c[i]
        if v >= 0:
            r = <i64>sqrt(<double>v)
            while r * r > v:
                r -= 1
            while (r + 1) * (r + 1) <= v:
                r += 1
            if r * r == v:
                out.append((x, r))
        if x == hi:
            break
        x += 1
    return out


ctypedef unsigned int u32


cdef int _enumerate(int lo, int hi, int *e, u32 *pr, u32 *q, int J,
                    u32 *res_out, int *k_out, int P) nogil:
    """Residue vectors and exponents of every divisor built from primes
    ``lo <= i < hi``, in odometer order. Returns the count."""
    cdef int n = 0, i, j, l, width = hi - lo
    cdef int *k = k_out
    cdef u32 *cur
    for j in range(J):
        res_out[j] = 1 % q[j]
    for i in range(width):
        k[i] = 0
    while True:
        n += 1
        i = width - 1
        while i >= 0 and k[(n - 1) * width + i] == e[lo + i]:
            i -= 1
        if i < 0:
            return n
        cur = res_out + n * J
        for l in range(width):
            k[n * width + l] = k[(n - 1) * width + l] if l <= i else 0
        k[n * width + i] += 1
        # residue of the new divisor: recompute from the prefix that changed
        for j in range(J):
            cur[j] = 1 % q[j]
        for l in range(i + 1):
            for j in range(J):
                cur[j] = _upow_mul(cur[j], pr[(lo + l) * J + j], k[n * width + l], q[j])


cdef inline u32 _upow_mul(u32 acc, u32 b, int k, u32 m) nogil:
    while k > 0:
        acc = <u32>((<u64>acc * b) % m)
        k -= 1
    return acc


def sieve_divisors(exps, pres, moduli, ok):
    """Filter the divisors ``prod p_i**k_i`` (``0 <= k_i <= exps[i]``) by residues.

    ``pres[i][j]`` is ``p_i mod moduli[j]`` and ``ok[j]`` is a bytes table of
    length ``moduli[j]`` holding a bit mask per residue of the divisor. A
    divisor survives when the AND of its masks over every modulus is nonzero.
    Returns ``[(k_tuple, mask), ...]`` in odometer order (last index fastest).
    Moduli must be below ``2**16``.
    """
    cdef int P = len(exps), J = len(moduli)
    cdef int i, j, split, nA, nB, a, b
    cdef long long tau, half
    cdef unsigned char mask
    cdef u32 *q = NULL
    cdef u32 *pr = NULL
    cdef u32 *resA = NULL
    cdef u32 *resB = NULL
    cdef int *e = NULL
    cdef int *kA = NULL
    cdef int *kB = NULL
    cdef Py_ssize_t *off = NULL
    cdef u32 *ra
    cdef u32 *rb
    cdef bytes table = b"".join(ok)
    cdef const unsigned char *tab = table
    out = []
    if J == 0:
        raise ValueError("need at least one modulus")
    # split the primes so both halves have about sqrt(tau) divisors
    tau = 1
    for x in exps:
        tau *= x + 1
    half = 1
    split = 0
    while split < P and half * half < tau:
        half *= exps[split] + 1
        split += 1
    nA = 1
    for i in range(split):
        nA *= exps[i] + 1
    nB = tau // nA
    try:
        q = <u32 *>calloc(J, sizeof(u32))
        pr = <u32 *>calloc(P * J + 1, sizeof(u32))
        e = <int *>calloc(P + 1, sizeof(int))
        off = <Py_ssize_t *>calloc(J, sizeof(Py_ssize_t))
        resA = <u32 *>calloc(<size_t>nA * J, sizeof(u32))
        resB = <u32 *>calloc(<size_t>nB * J, sizeof(u32))
        kA = <int *>calloc(<size_t>nA * split + 1, sizeof(int))
        kB = <int *>calloc(<size_t>nB * (P - split) + 1, sizeof(int))
        if not (q and pr and e and off and resA and resB and kA and kB):
            raise MemoryError()
        for j in range(J):
            if not 0 < moduli[j] < 65536:
                raise ValueError("moduli must lie in [1, 2**16)")
            q[j] = moduli[j]
            if len(ok[j]) != <Py_ssize_t>q[j]:
                raise ValueError("ok table length must equal its modulus")
            off[j] = 0 if j == 0 else off[j - 1] + <Py_ssize_t>q[j - 1]
        for i in range(P):
            e[i] = exps[i]
            for j in range(J):
                pr[i * J + j] = (<u64>pres[i][j]) % q[j]
        with nogil:
            _enumerate(0, split, e, pr, q, J, resA, kA, P)
            _enumerate(split, P, e, pr, q, J, resB, kB, P)
        for a in range(nA):
            ra = resA + <size_t>a * J
            for b in range(nB):
                rb = resB + <size_t>b * J
                mask = 3
                for j in range(J):
                    mask &= tab[off[j] + (<u64>ra[j] * rb[j]) % q[j]]
                    if mask == 0:
                        break
                if mask:
                    out.append((
                        tuple([kA[a * split + i] for i in range(split)])
                        + tuple([kB[b * (P - split) + i] for i in range(P - split)]),
                        mask,
                    ))
    finally:
        free(q)
        free(pr)
        free(e)
        free(off)
        free(resA)
        free(resB)
        free(kA)
        free(kB)
    return out
