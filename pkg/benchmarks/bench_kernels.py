"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py            # kernel micro-benchmarks
    python benchmarks/bench_kernels.py --e2e      # also whole-solver runs

End-to-end runs start a fresh interpreter per backend, since the backend is
chosen once at import (``HYPERINT_PURE_PYTHON=1`` forces the fallback).
"""

import argparse
import os
import random
import subprocess
import sys
import time

from hyperint import _kernels
from hyperint.solvers import _sieve_moduli
from hyperint.intarith import factorize


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def primality_case(rng):
    nums = [rng.getrandbits(64) | 1 for _ in range(20_000)]
    return lambda k: [k.is_prime_u64(n) for n in nums]


def rho_case(rng):
    semis = [1000003 * 1000033, 4294967291 * 4294967279, 2147483647 * 4294967291]
    return lambda k: [k.rho_brent_u64(n, 1, 2, 10**9) for n in semis]


def scan_case(rng):
    coeffs = [1, -1000, 0, 3, 1]
    return lambda k: k.scan_squares(coeffs, -200_000, 200_000)


def sieve_case(rng):
    N = 2**120 - 1
    fac = factorize(N)
    moduli = _sieve_moduli(N, 1)
    ok = [bytes(rng.randint(0, 3) for _ in range(q)) for q in moduli]
    exps = [e for _, e in fac.factors] + [3, 3]
    pres = [[p % q for q in moduli] for p, _ in fac.factors] + [[5 % q for q in moduli]] * 2
    return lambda k: k.sieve_divisors(exps, pres, moduli, ok)


CASES = {
    "is_prime_u64 x20000": primality_case,
    "rho_brent_u64 x3 semiprimes": rho_case,
    "scan_squares 400k x": scan_case,
    "sieve_divisors tau~130k": sieve_case,
}

E2E = [
    ("family2 l=91", "from hyperint import solve_family2; solve_family2(1, -2**91, 1)"),
    ("family1 sweep |a|,|b|,|k|<=6",
     "from hyperint import solve_family1\n"
     "r = range(-6, 7)\n"
     "[solve_family1(a, b, k) for a in r for b in r for k in r if a != b and k]"),
    ("factorize 500 x 64-bit",
     "import random\nfrom hyperint import factorize\n"
     "rng = random.Random(1)\n[factorize(rng.getrandbits(64) | 1) for _ in range(500)]"),
]


def run_e2e(label, code, pure):
    env = dict(os.environ)
    if pure:
        env["HYPERINT_PURE_PYTHON"] = "1"
    else:
        env.pop("HYPERINT_PURE_PYTHON", None)
    wrapped = f"import time\nt0 = time.perf_counter()\n{code}\nprint(time.perf_counter() - t0)"
    out = subprocess.run([sys.executable, "-c", wrapped], env=env, capture_output=True,
                         text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--e2e", action="store_true", help="also time whole solver runs")
    args = ap.parse_args()

    backends = _kernels.available_backends()
    print(f"default backend: {_kernels.BACKEND}; available: {', '.join(sorted(backends))}")
    if "cython" not in backends:
        print("compiled extension not built; only the fallback can be timed")
    header = f"{'kernel':32} {'python s':>10} {'cython s':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, make in CASES.items():
        fn = make(random.Random(0))
        row = {name: best_of(lambda: fn(mod), args.repeat) for name, mod in backends.items()}
        py, cy = row.get("python"), row.get("cython")
        speed = f"{py / cy:8.1f}x" if cy else "       -"
        print(f"{label:32} {py:10.4f} {cy if cy else float('nan'):10.4f} {speed}")

    if args.e2e:
        print()
        print(f"{'end to end':32} {'python s':>10} {'cython s':>10} {'speedup':>8}")
        for label, code in E2E:
            py = run_e2e(label, code, pure=True)
            cy = run_e2e(label, code, pure=False) if "cython" in backends else None
            speed = f"{py / cy:8.1f}x" if cy else "       -"
            print(f"{label:32} {py:10.3f} {cy if cy else float('nan'):10.3f} {speed}")


if __name__ == "__main__":
    main()
