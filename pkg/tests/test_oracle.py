import pytest

from hyperint import DomainError, IntPoly, solve_family1, solve_family3
from hyperint.oracle import ScanRange, cross_check, curve_scan, scan
from hyperint.solvers import Family1, Family3, IntegerPoint, SolutionSet

GOLDEN_A = Family1(1, 2, 41)


def test_scan_range():
    r = ScanRange.symmetric(3)
    assert len(r) == 7 and -3 in r and 4 not in r
    parts = list(ScanRange(-10, 10).chunks(6))
    assert [(p.lo, p.hi) for p in parts] == [(-10, -5), (-4, 1), (2, 7), (8, 10)]
    with pytest.raises(DomainError):
        ScanRange(2, 1)


def test_scan_finds_golden_a():
    f = GOLDEN_A.rhs()
    out = scan(f, ScanRange.symmetric(6724))
    assert out.points == solve_family1(1, 2, 41).points


def test_scan_tiny_polynomials():
    assert scan(IntPoly([0, 0, 1]), ScanRange(-2, 2)).points == tuple(
        IntegerPoint(x, abs(x)) for x in range(-2, 3)
    )
    assert scan(IntPoly([-1]), ScanRange(-5, 5)).points == ()
    with pytest.raises(DomainError):
        scan(IntPoly(), ScanRange(0, 1))


def test_scan_backends_agree_beyond_word_size():
    # values near x = 10^6 exceed 2^62 for this quartic, forcing the bigint path
    f = IntPoly.from_high([1, 0, -(2**40), 0, 1])
    rng = ScanRange(1_048_570, 1_048_580)
    python = scan(f, rng, backend="python")
    assert python == scan(f, rng)
    assert IntegerPoint(2**20, 1) in python


def test_scan_range_union():
    f = IntPoly.from_high([1, 0, -5, 0, 4])
    whole = set(scan(f, ScanRange(-300, 300)).points)
    left = set(scan(f, ScanRange(-300, -1)).points)
    right = set(scan(f, ScanRange(0, 300)).points)
    assert whole == left | right


def test_scan_workers_match_serial():
    f = GOLDEN_A.rhs()
    rng = ScanRange(-200_000, 200_000)
    assert scan(f, rng, workers=3).points == scan(f, rng).points


def test_even_polynomial_scan_is_symmetric():
    f = IntPoly.from_high([1, 0, -(2**10), 0, 1])
    pts = set(scan(f, ScanRange.symmetric(2000)).points)
    assert {(-x, y) for x, y in pts} == pts


def test_curve_scan_with_leading_coefficient():
    spec = Family3(6, 13, 2)
    assert curve_scan(spec, ScanRange.symmetric(50)).points == solve_family3(6, 13, 2).points


def test_cross_check_agrees():
    out = solve_family1(1, 2, 41)
    report = cross_check(out, GOLDEN_A, ScanRange.symmetric(6724))
    assert report.ok
    assert report.summary() == "oracle: agree on [-6724, 6724] (0 unsound, 0 missing)"


def test_cross_check_flags_missing_point():
    out = solve_family1(1, 2, 41)
    corrupted = SolutionSet(out.spec, out.points[1:])
    report = cross_check(corrupted, GOLDEN_A, ScanRange.symmetric(6724))
    assert not report.ok
    assert report.missing == [(-51, 420)] and report.unsound == []


def test_cross_check_flags_fake_point():
    out = solve_family1(1, 2, 41)
    corrupted = SolutionSet(out.spec, tuple(sorted(out.points + (IntegerPoint(3, 5),))))
    report = cross_check(corrupted, GOLDEN_A, ScanRange.symmetric(6724))
    assert report.unsound == [(3, 5)] and report.missing == []
    assert "DISAGREE" in report.summary()


def test_cross_check_outside_range_uses_substitution():
    out = solve_family1(1, 2, 41)
    report = cross_check(out, GOLDEN_A.rhs(), ScanRange(-10, 10))
    # (-51, 420) etc. lie outside the range but are genuine
    assert report.ok
    fake = SolutionSet(None, out.points + (IntegerPoint(1000, 1),))
    assert cross_check(fake, GOLDEN_A.rhs(), ScanRange(-10, 10)).unsound == [(1000, 1)]
