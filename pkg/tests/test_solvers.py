import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperint import (
    CurveError,
    DomainError,
    Family1,
    Family2,
    Family3,
    GeneralQuartic,
    IntPoly,
    MasserBiquadratic,
    MethodInapplicable,
    Sextic,
    SolutionSet,
    solve,
    solve_family1,
    solve_family2,
    solve_family3,
    solve_general_quartic,
    solve_masser_biquadratic,
    solve_sextic,
)
from hyperint.intarith import divisor_count
from hyperint.oracle import ScanRange, curve_scan
from hyperint.solvers import bound_family1, masser_identity, oracle_bound

X = IntPoly([0, 1])


def brute(lhs, f, radius):
    """Independent reference: every (x, y>=0) with lhs*y^2 == f(x), |x| <= radius."""
    out = []
    for x in range(-radius, radius + 1):
        v = f(x)
        if v % lhs:
            continue
        w = v // lhs
        if w >= 0 and math.isqrt(w) ** 2 == w:
            out.append((x, math.isqrt(w)))
    return out


# frozen reference values


def test_family1_golden_sets():
    assert solve_family1(1, 2, 41).points == (
        (-51, 420), (-43, 0), (-42, 0), (-22, 420), (-2, 0), (-1, 0), (7, 420),
    )
    assert len(solve_family1(3, -2, 9)) == 11


def test_family1_small_case():
    assert solve_family1(0, 1, 1).points == ((-2, 0), (-1, 0), (0, 0))


def test_family2_no_points_with_prime_delta():
    out = solve_family2(7, -15, -2)
    assert out.points == ()
    assert out.meta["factored_integer"] == 617


def test_family2_power_of_two():
    assert solve_family2(1, -(2**10), 1).points == ((-32, 1), (0, 1), (32, 1))


def test_family3_examples():
    assert solve_family3(1, 0, -1).points == ((-1, 0), (1, 0))
    assert solve_family3(6, 13, 2).points == ((-2, 5), (2, 5))
    assert solve_family3(12, -30, -24).points == ((-2, 2), (2, 2))


def test_sextic_examples():
    trivial = lambda al: sorted((s * x, 0) for x in (1, al, al + 1) for s in (1, -1))
    assert list(solve_sextic(2).points) == trivial(2)
    assert list(solve_sextic(3).points) == trivial(3)
    assert (2, 90) in solve_sextic(7) and (-2, 90) in solve_sextic(7)


def test_masser_examples():
    # (0, 2) is a point too: f(0) = 4
    assert solve_masser_biquadratic(-5, 4).points == ((-2, 0), (-1, 0), (0, 2), (1, 0), (2, 0))
    assert solve_masser_biquadratic(0, -1).points == ((-1, 0), (1, 0))


def test_family1_count_exceeds_twice_tau_for_square_n():
    # y^2 = (x-6)(x-5)(x+1)(x+2): 7 points while 2*tau(49) = 6
    out = solve_family1(-6, 1, 1)
    assert out.points == tuple(sorted(brute(1, Family1(-6, 1, 1).rhs(), 10**4)))
    assert len(out) == 7 and 2 * divisor_count(49) == 6


# construction errors


@pytest.mark.parametrize(
    "make",
    [
        lambda: Family1(2, 2, 1),
        lambda: Family1(1, 2, 0),
        lambda: Family2(0, 1, 1),
        lambda: Family2(1, 2, 1),
        lambda: Family3(0, 1, 1),
        lambda: Family3(2, 4, 2),
        lambda: Sextic(0),
        lambda: Sextic(-1),
        lambda: Sextic(1),
        lambda: Sextic(-2),
        lambda: GeneralQuartic(2, 3, 2, 1),
        lambda: MasserBiquadratic(4, 4),
    ],
)
def test_degenerate_curves_rejected(make):
    with pytest.raises(CurveError):
        make()


def test_non_integer_parameters_rejected():
    with pytest.raises(DomainError):
        Family1(1.5, 2, 3)


def test_quartic_inflexion_case_inapplicable():
    with pytest.raises(MethodInapplicable, match="not a polynomial square"):
        solve_general_quartic(225, 0, 0, 49)


def test_quartic_without_double_root_inapplicable():
    with pytest.raises(MethodInapplicable):
        solve_general_quartic(1, 1, 1, 2)


# properties


def family1_params():
    nz = st.integers(-25, 25).filter(bool)
    return st.tuples(st.integers(-25, 25), st.integers(-25, 25), nz).filter(lambda t: t[0] != t[1])


@settings(max_examples=150)
@given(family1_params())
def test_family1_contains_roots_and_is_symmetric(params):
    a, b, k = params
    pts = set(solve_family1(a, b, k).points)
    assert {(-a, 0), (-a - k, 0), (-b, 0), (-b - k, 0)} <= pts
    # x -> -(a+b+k) - x permutes the four linear factors
    assert {(-(a + b + k) - x, y) for x, y in pts} == pts
    M = max(abs(a), abs(b), abs(k))
    assert all(abs(x) < 4 * M * M for x, _ in pts)


@settings(max_examples=100)
@given(family1_params())
def test_family1_against_brute_force(params):
    a, b, k = params
    spec = Family1(a, b, k)
    assert list(solve_family1(a, b, k).points) == brute(1, spec.rhs(), bound_family1(a, b, k))


def test_family1_count_within_corrected_bound():
    r = range(-6, 7)
    for a in r:
        for b in r:
            for k in r:
                if a == b or k == 0:
                    continue
                n = len(solve_family1(a, b, k))
                assert n <= 2 * (divisor_count((k * (a - b)) ** 2) + 1)


@settings(max_examples=150)
@given(
    st.integers(-6, 6).filter(bool),
    st.integers(-200, 200),
    st.integers(-200, 200),
)
def test_biquadratic_families_against_brute_force(c, a, b):
    for cls, solver in ((Family2, solve_family2), (Family3, solve_family3)):
        try:
            spec = cls(c, a, b)
        except CurveError:
            continue
        pts = solver(c, a, b).points
        assert list(pts) == brute(spec.lhs_coeff, spec.rhs(), oracle_bound(spec))
        assert {(-x, y) for x, y in pts} == set(pts)


@settings(max_examples=200)
@given(st.integers(-300, 300), st.integers(-300, 300))
def test_masser_equals_family2(b, d):
    if b * b == 4 * d:
        return
    assert solve_masser_biquadratic(b, d).points == solve_family2(1, b, d).points


@pytest.mark.parametrize("alpha", [2, 3, 4, 5, 7, 10, 12])
def test_sextic_symmetric_and_complete(alpha):
    out = solve_sextic(alpha)
    other = solve_sextic(-1 - alpha)
    assert out.points == other.points
    spec = Sextic(alpha)
    assert list(out.points) == brute(1, spec.rhs(), oracle_bound(spec))


@settings(max_examples=60)
@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-500, 500).filter(bool))
def test_general_quartic_planted_square(p, q, A):
    # f = (x^2 + p x + q)^2 - A has z0 = A as a repeated critical value
    f = (X * X + X.scale(p) + q) ** 2 - A
    a0, a1, a2, a3 = f.coeffs[:4]
    if p * p == 4 * q:
        return
    spec = GeneralQuartic(a3, a2, a1, a0)
    out = solve_general_quartic(a3, a2, a1, a0)
    ref = curve_scan(spec, ScanRange.symmetric(oracle_bound(spec)))
    assert out.points == ref.points


def test_general_quartic_reproduces_family1():
    out = solve_general_quartic(88, 2063, 5588, 3612)
    assert out.points == solve_family1(1, 2, 41).points
    root, r = out.meta["double_root"], out.meta["square_root"]
    assert (root.A, root.B) == (1681, 2)
    assert r * r == GeneralQuartic(88, 2063, 5588, 3612).rhs().scale(4) + 1681


def test_masser_identity_random():
    rng = random.Random(0)
    for _ in range(100):
        a, b, c, d = (rng.randint(-10**9, 10**9) for _ in range(4))
        Q, C, D = masser_identity(a, b, c, d)
        f = IntPoly([d, c, b, a, 1])
        assert f.scale(64) - Q * Q == X.scale(C) + D


# result objects


def test_solution_set_json_roundtrip():
    for out in (solve_family1(1, 2, 41), solve_family2(1, -(2**80), 1), solve_sextic(7)):
        data = json.loads(json.dumps(out.to_dict()))
        back = SolutionSet.from_dict(data)
        assert back == out
        assert back.meta["factorization"] == out.meta["factorization"]


def test_solve_dispatch():
    spec = Family3(6, 13, 2)
    assert solve(spec).points == solve_family3(6, 13, 2).points
    assert solve(spec).spec == spec
