"""Brute-force referee: scan an x-interval and test f(x) for squareness.

Deliberately naive. It shares only the square-root primitives with the
solvers and never factors anything, so agreement with a solver is evidence
that the divisor walk missed nothing.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt

from . import _kernels
from .errors import DomainError
from .poly import IntPoly
from .solvers import CurveSpec, IntegerPoint, SolutionSet

CHUNK = 1 << 16


@dataclass(frozen=True)
class ScanRange:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"empty scan range [{self.lo}, {self.hi}]")

    @classmethod
    def symmetric(cls, radius: int) -> "ScanRange":
        return cls(-radius, radius)

    def __len__(self):
        return self.hi - self.lo + 1

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    def chunks(self, size: int = CHUNK):
        lo = self.lo
        while lo <= self.hi:
            hi = min(lo + size - 1, self.hi)
            yield ScanRange(lo, hi)
            lo = hi + 1


def _fits_word(f: IntPoly, rng: ScanRange) -> bool:
    R = max(abs(rng.lo), abs(rng.hi), 1)
    bound = sum(abs(c) * R**i for i, c in enumerate(f.coeffs))
    return bound < _kernels.SCAN_LIMIT and f.degree < 32


def _scan_chunk(coeffs, lo, hi, backend):
    f = IntPoly(coeffs)
    rng = ScanRange(lo, hi)
    if backend is not None:
        kern = _kernels.available_backends()[backend]
    else:
        kern = _kernels
    if _fits_word(f, rng):
        return kern.scan_squares(list(f.coeffs), lo, hi)
    out = []
    for x in range(lo, hi + 1):
        v = f(x)
        if v < 0:
            continue
        r = isqrt(v)
        if r * r == v:
            out.append((x, r))
    return out


def scan(
    f: IntPoly, rng: ScanRange, workers: int = 1, backend: str | None = None
) -> SolutionSet:
    """Every ``(x, y)`` with ``x`` in ``rng``, ``y >= 0`` and ``f(x) == y**2``.

    ``workers > 1`` farms 2**16-wide chunks out to a process pool.
    ``backend`` forces ``"python"`` or ``"cython"`` kernels.
    """
    if not f:
        raise DomainError("scan needs a nonzero polynomial")
    coeffs = list(f.coeffs)
    parts = list(rng.chunks())
    if workers > 1 and len(parts) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = pool.map(
                _scan_chunk,
                [coeffs] * len(parts),
                [p.lo for p in parts],
                [p.hi for p in parts],
                [backend] * len(parts),
            )
            found = [pt for chunk in results for pt in chunk]
    else:
        found = [pt for p in parts for pt in _scan_chunk(coeffs, p.lo, p.hi, backend)]
    points = tuple(sorted({IntegerPoint(x, y) for x, y in found}))
    return SolutionSet(None, points, {"scanned": len(rng), "range": (rng.lo, rng.hi)})


def curve_scan(spec: CurveSpec, rng: ScanRange, workers: int = 1) -> SolutionSet:
    """Scan for the integer points of ``spec`` itself.

    For ``c*y**2 == h(x)`` this scans ``c*h(x) == Y**2`` and keeps the ``Y``
    divisible by ``|c|``.
    """
    c = spec.lhs_coeff
    if c == 1:
        raw = scan(spec.rhs(), rng, workers)
        return SolutionSet(spec, raw.points, raw.meta)
    raw = scan(spec.rhs().scale(c), rng, workers)
    m = abs(c)
    points = tuple(IntegerPoint(x, Y // m) for x, Y in raw.points if Y % m == 0)
    return SolutionSet(spec, points, raw.meta)


@dataclass
class CrossCheckReport:
    """``unsound``: solver points that are not points of the curve.
    ``missing``: curve points inside the range the solver did not return."""

    unsound: list[IntegerPoint] = field(default_factory=list)
    missing: list[IntegerPoint] = field(default_factory=list)
    range: ScanRange | None = None

    @property
    def ok(self) -> bool:
        return not self.unsound and not self.missing

    def summary(self) -> str:
        verdict = "agree" if self.ok else "DISAGREE"
        return (
            f"oracle: {verdict} on [{self.range.lo}, {self.range.hi}] "
            f"({len(self.unsound)} unsound, {len(self.missing)} missing)"
        )


def cross_check(
    solver_out: SolutionSet, f: IntPoly | CurveSpec, rng: ScanRange, workers: int = 1
) -> CrossCheckReport:
    """Compare a solver's points with a scan of ``y**2 = f(x)`` over ``rng``.

    ``f`` may also be a :class:`CurveSpec`. Points outside ``rng`` are
    judged by substitution alone.
    """
    if isinstance(f, CurveSpec):
        reference = set(curve_scan(f, rng, workers).points)
        on_curve = f.satisfied
    else:
        reference = set(scan(f, rng, workers).points)

        def on_curve(x, y):
            return f(x) == y * y

    claimed = set(solver_out.points)
    unsound = sorted(
        p
        for p in claimed
        if p.y < 0 or (p not in reference if p.x in rng else not on_curve(p.x, p.y))
    )
    missing = sorted(reference - claimed)
    return CrossCheckReport(unsound, missing, rng)
