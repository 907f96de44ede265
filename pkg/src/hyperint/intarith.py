"""Exact integer utilities: square roots, primality, factorization, divisors.

Everything works on Python ints of any size. Factorization strips small
primes by gcd against primorial blocks up to ``TRIAL_BOUND``, splits
``b**e +- 1`` shaped cofactors along their algebraic factors, and finishes
with Pollard rho (Brent's cycle finding, batched gcd). Machine-word
cofactors go through the compiled kernels when they are available.
"""

from __future__ import annotations

import math
import random
import threading
import time
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import _kernels, _purepy
from .errors import DomainError, FactorizationIncomplete

__all__ = [
    "Factorization",
    "TRIAL_BOUND",
    "as_perfect_square",
    "clear_factor_cache",
    "divisor_count",
    "factorize",
    "iroot",
    "is_probable_prime",
    "isqrt",
    "positive_divisors",
    "signed_divisor_pairs",
]

TRIAL_BOUND = 10**6
MR_ROUNDS = 64
_BLOCK = 512

_SQUARES_MOD_256 = frozenset(i * i % 256 for i in range(256))


def isqrt(n: int) -> int:
    """Largest ``r`` with ``r*r <= n``."""
    if n < 0:
        raise DomainError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def as_perfect_square(n: int) -> int | None:
    """Return ``r >= 0`` with ``r*r == n``, or None if ``n`` is not a square."""
    if n < 0:
        return None
    if n & 0xFF not in _SQUARES_MOD_256:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def iroot(n: int, k: int) -> int:
    """Floor of the ``k``-th root of ``n >= 0``."""
    if n < 0 or k < 1:
        raise DomainError(f"iroot({n}, {k})")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


# -- primality -------------------------------------------------------------


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin: deterministic below 2**64, ``MR_ROUNDS`` random bases above.

    The witnesses for large ``n`` are drawn from a generator seeded by ``n``
    itself, so repeated calls give the same answer.
    """
    if n < 2:
        return False
    if n < _kernels.U64_LIMIT:
        return bool(_kernels.is_prime_u64(n))
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return False
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    rng = random.Random(n)
    for _ in range(MR_ROUNDS):
        a = rng.randrange(2, n - 1)
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


# -- factorization ---------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer ``n``.

    ``factors`` is a tuple of ``(prime, exponent)`` with strictly increasing
    primes; it is empty for ``n == 1``.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("Factorization needs a positive integer")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)) or any(e < 1 for _, e in self.factors):
            raise DomainError("factors must have increasing primes and positive exponents")
        if math.prod(p**e for p, e in self.factors) != self.n:
            raise DomainError(f"factors do not multiply to {self.n}")

    @property
    def tau(self) -> int:
        """Number of positive divisors."""
        return math.prod(e + 1 for _, e in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def divisors(self) -> list[int]:
        """Positive divisors in increasing order."""
        powers = [[p**i for i in range(e + 1)] for p, e in self.factors]
        return sorted(math.prod(combo) for combo in product(*powers))


def _sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


@lru_cache(maxsize=None)
def _prime_blocks():
    """Primes below TRIAL_BOUND in blocks, each paired with its product."""
    primes = _sieve(TRIAL_BOUND)
    blocks = []
    for i in range(0, len(primes), _BLOCK):
        chunk = primes[i : i + _BLOCK]
        blocks.append((math.prod(chunk), chunk))
    return tuple(blocks)


def _trial_divide(n, found):
    """Strip all prime factors below TRIAL_BOUND from ``n`` into ``found``."""
    for block_prod, chunk in _prime_blocks():
        if n == 1:
            break
        if math.gcd(n, block_prod) == 1:
            if chunk[-1] * chunk[-1] > n:
                break
            continue
        for p in chunk:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                found[p] += e
        if chunk[-1] * chunk[-1] > n:
            break
    # Everything left has no factor below TRIAL_BOUND.
    return n


def _perfect_power(n):
    """Return ``(b, e)`` with ``n == b**e`` and ``e`` maximal (``e == 1`` if none)."""
    e_total = 1
    changed = True
    while changed and n > 3:
        changed = False
        for p in _sieve(max(2, n.bit_length())):
            r = iroot(n, p)
            if r**p == n:
                n = r
                e_total *= p
                changed = True
                break
    return n, e_total


def _algebraic_pieces(n):
    """Split ``n = b**e - 1`` or ``b**e + 1`` along ``b**d +- 1`` gcds.

    Returns a list of integers whose product is ``n``; ``[n]`` when ``n`` has
    no such shape.
    """
    for sign in (1, -1):
        b, e = _perfect_power(n + sign)
        if e > 1:
            break
    else:
        return [n]
    divs = [d for d in range(1, e) if e % d == 0]
    if sign == 1:
        # b**e - 1
        probes = [b**d - 1 for d in divs]
        if e % 2 == 0:
            probes += [b**d + 1 for d in divs if (e // 2) % d == 0]
    else:
        probes = [b**d + 1 for d in divs if (e // d) % 2 == 1]
    pieces = [n]
    for g in probes:
        nxt = []
        for piece in pieces:
            h = math.gcd(piece, g)
            if 1 < h < piece:
                nxt.extend((h, piece // h))
            else:
                nxt.append(piece)
        pieces = nxt
    return pieces


def _rho_split(n, deadline):
    """Find a proper divisor of the odd composite ``n``; None on timeout."""
    word = n < _kernels.U64_LIMIT
    step = 1 << 16
    for c in range(1, 1 << 20):
        y0 = 2
        while True:
            if word:
                g = _kernels.rho_brent_u64(n, c, y0, step)
            else:
                g = _purepy.rho_brent_u64(n, c, y0, step)
            if g != 0:
                break
            if deadline is not None and time.monotonic() > deadline:
                return None
            step *= 2
        if 1 < g < n:
            return g
        if deadline is not None and time.monotonic() > deadline:
            return None
    return None


def _factor_large(n, found, deadline, remaining):
    """Fully factor ``n`` (no prime factors below TRIAL_BOUND) into ``found``."""
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            found[m] += 1
            continue
        b, e = _perfect_power(m)
        if e > 1:
            stack.extend([b] * e)
            continue
        if deadline is not None and time.monotonic() > deadline:
            remaining.append(m)
            continue
        g = _rho_split(m, deadline)
        if g is None:
            remaining.append(m)
            continue
        stack.extend((g, m // g))


_cache: dict[int, Factorization] = {}
_cache_lock = threading.Lock()


def clear_factor_cache() -> None:
    with _cache_lock:
        _cache.clear()


def factorize(n: int, budget: float | None = None) -> Factorization:
    """Complete prime factorization of ``|n|``.

    ``budget`` is a wall-clock limit in seconds. If it runs out before every
    cofactor is certified prime, :class:`FactorizationIncomplete` is raised
    with the partial result; a partial answer is never returned.
    """
    n = abs(n)
    if n == 0:
        raise DomainError("cannot factor 0")
    with _cache_lock:
        hit = _cache.get(n)
    if hit is not None:
        return hit
    deadline = None if budget is None else time.monotonic() + budget

    found = Counter()
    twos = (n & -n).bit_length() - 1
    if twos:
        found[2] = twos
    m = n >> twos
    remaining = []
    for piece in _algebraic_pieces(m) if m > 3 else [m]:
        rest = _trial_divide(piece, found)
        if rest > 1:
            _factor_large(rest, found, deadline, remaining)
    if remaining:
        raise FactorizationIncomplete(n, found.items(), remaining)

    result = Factorization(n, tuple(sorted(found.items())))
    with _cache_lock:
        _cache[n] = result
    return result


def positive_divisors(n: int, budget: float | None = None) -> list[int]:
    """Sorted positive divisors of ``|n|``."""
    return factorize(n, budget).divisors()


def divisor_count(n: int, budget: float | None = None) -> int:
    """tau(|n|), the number of positive divisors."""
    return factorize(n, budget).tau


def signed_divisor_pairs(N: int, budget: float | None = None) -> list[tuple[int, int]]:
    """All ``(d1, d2)`` with ``d1 * d2 == N`` and ``d1 <= d2``, sorted.

    >>> signed_divisor_pairs(4)
    [(-4, -1), (-2, -2), (1, 4), (2, 2)]
    >>> signed_divisor_pairs(-4)
    [(-4, 1), (-2, 2), (-1, 4)]
    """
    if N == 0:
        raise DomainError("divisor pairs of 0 are unbounded")
    divs = positive_divisors(N, budget)
    m = abs(N)
    pairs = []
    if N > 0:
        for d in divs:
            e = m // d
            if d > e:
                break
            pairs.append((d, e))
            pairs.append((-e, -d))
    else:
        pairs = [(-d, m // d) for d in divs]
    pairs.sort()
    return pairs
