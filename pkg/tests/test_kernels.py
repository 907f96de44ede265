"""The compiled kernels and the pure-Python fallback must agree exactly."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperint import _kernels, _purepy


def naive_scan(coeffs, lo, hi):
    out = []
    for x in range(lo, hi + 1):
        v = sum(c * x**i for i, c in enumerate(coeffs))
        if v >= 0 and math.isqrt(v) ** 2 == v:
            out.append((x, math.isqrt(v)))
    return out


def test_backend_selected():
    assert _kernels.BACKEND in ("cython", "python")
    assert "python" in _kernels.available_backends()


@settings(max_examples=500)
@given(st.integers(min_value=0, max_value=(1 << 64) - 1))
def test_is_prime_u64_agrees(n):
    expected = _purepy.is_prime_u64(n)
    for impl in _kernels.available_backends().values():
        assert bool(impl.is_prime_u64(n)) is expected


def test_is_prime_u64_small_range(backend):
    primes = [n for n in range(3000) if n > 1 and all(n % p for p in range(2, math.isqrt(n) + 1))]
    assert [n for n in range(3000) if backend.is_prime_u64(n)] == primes


@pytest.mark.parametrize(
    "n",
    [1000003 * 1000033, 4294967291 * 4294967279, 2**64 - 1, 999999000001 * 3, 2**62 + 1],
)
def test_rho_finds_a_divisor(backend, n):
    g = backend.rho_brent_u64(n, 1, 2, 10**8)
    assert 1 < g <= n and n % g == 0


def test_rho_respects_iteration_cap(backend):
    n = 4294967291 * 4294967279
    assert backend.rho_brent_u64(n, 1, 2, 10) == 0


@settings(max_examples=60)
@given(
    st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=5),
    st.integers(min_value=-300, max_value=0),
    st.integers(min_value=0, max_value=300),
)
def test_scan_squares_agrees(coeffs, lo, hi):
    expected = naive_scan(coeffs, lo, hi)
    for impl in _kernels.available_backends().values():
        assert impl.scan_squares(coeffs, lo, hi) == expected


def test_scan_squares_near_word_limit(backend):
    # f(x) = x^4 + 1 around |x| = 40000 reaches ~2.56e18
    assert backend.scan_squares([0, 0, 0, 0, 1], 39990, 40000) == [
        (x, x * x) for x in range(39990, 40001)
    ]


def naive_sieve(exps, pres, moduli, ok):
    from itertools import product

    out = []
    for ks in product(*(range(e + 1) for e in exps)):
        mask = 3
        for j, q in enumerate(moduli):
            r = 1
            for i, k in enumerate(ks):
                r = r * pow(pres[i][j], k, q) % q
            mask &= ok[j][r]
        if mask:
            out.append((ks, mask))
    return out


@settings(max_examples=150)
@given(st.data())
def test_sieve_divisors_agrees(data):
    moduli = data.draw(st.lists(st.sampled_from([3, 7, 11, 13, 31, 257]), min_size=1, max_size=4))
    exps = data.draw(st.lists(st.integers(0, 4), max_size=6))
    pres = [[data.draw(st.integers(0, 10**6)) for _ in moduli] for _ in exps]
    ok = [bytes(data.draw(st.lists(st.integers(0, 3), min_size=q, max_size=q))) for q in moduli]
    expected = naive_sieve(exps, pres, moduli, ok)
    for impl in _kernels.available_backends().values():
        assert impl.sieve_divisors(exps, pres, moduli, ok) == expected


def test_sieve_divisors_rejects_bad_tables(backend):
    with pytest.raises(ValueError):
        backend.sieve_divisors([1], [[2]], [7], [b"\x03" * 6])
    with pytest.raises(ValueError):
        backend.sieve_divisors([1], [[2]], [], [])
