"""Dense univariate polynomials over the integers.

Besides ring arithmetic this module provides the pieces of the double-root
reduction for quartics: the resultant D(z) = Res_x(f(x) + z, f'(x)) as a
polynomial in z, its repeated rational root A/B**2, the exact square root of
B**2 f + A, and integer root finding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DenominatorNotSquare, DomainError
from .intarith import as_perfect_square, positive_divisors

__all__ = [
    "DoubleRoot",
    "IntPoly",
    "RESULTANT_POINTS",
    "CHECK_POINT",
    "bareiss_det",
    "integer_roots",
    "poly_square_root",
    "rational_double_root",
    "resultant",
    "resultant_in_z",
    "sylvester_matrix",
]


class IntPoly:
    """Immutable polynomial with integer coefficients, lowest degree first.

    ``IntPoly([-1, 0, 1])`` is x**2 - 1. Trailing zeros are stripped, so the
    zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[int] = (), var: str = "x"):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def from_high(cls, coeffs: Iterable[int], var: str = "x") -> "IntPoly":
        """Build from coefficients listed highest degree first."""
        return cls(list(coeffs)[::-1], var)

    @classmethod
    def monomial(cls, n: int, c: int = 1, var: str = "x") -> "IntPoly":
        return cls([0] * n + [c], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly([other], self.var)
        return None

    def __add__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        n = max(len(self.coeffs), len(q.coeffs))
        return IntPoly([self[i] + q[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-a for a in self.coeffs], self.var)

    def __sub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPoly((), self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative power of a polynomial")
        result = IntPoly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> "IntPoly":
        return IntPoly([c * a for a in self.coeffs], self.var)

    def derivative(self) -> "IntPoly":
        return IntPoly([i * a for i, a in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        """Horner evaluation; works for ints, Fractions and IntPolys."""
        v = 0
        for a in reversed(self.coeffs):
            v = v * x + a
        return v

    def eval(self, x: int) -> int:
        return self(x)

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPoly":
        """Divide out the content and make the leading coefficient positive."""
        g = self.content()
        if g == 0:
            return self
        if self.lc < 0:
            g = -g
        return IntPoly([a // g for a in self.coeffs], self.var)

    def divmod_exact(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Pseudo-free division; raises if a quotient coefficient is not integral."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [0] * max(0, len(rem) - other.degree)
        lc = other.lc
        for i in range(len(rem) - 1, other.degree - 1, -1):
            a = rem[i]
            if a == 0:
                continue
            c, r = divmod(a, lc)
            if r:
                raise DomainError("division is not exact over the integers")
            k = i - other.degree
            q[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
        return IntPoly(q, self.var), IntPoly(rem, self.var)


# -- resultants ------------------------------------------------------------


def bareiss_det(matrix: list[list[int]]) -> int:
    """Determinant by fraction-free Gaussian elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(p: IntPoly, q: IntPoly) -> list[list[int]]:
    """Sylvester matrix with the rows of ``p`` first (``deg q`` of them)."""
    m, n = p.degree, q.degree
    if m < 1 or n < 1:
        raise DomainError("Sylvester matrix needs two non-constant polynomials")
    size = m + n
    ph = list(reversed(p.coeffs))
    qh = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + ph + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qh + [0] * (size - n - 1 - i))
    return rows


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Res(p, q) as the determinant of the Sylvester matrix."""
    return bareiss_det(sylvester_matrix(p, q))


RESULTANT_POINTS = (0, 1, -1, 2)
CHECK_POINT = -2


def resultant_in_z(f: IntPoly) -> IntPoly:
    """D(z) = Res_x(f(x) + z, f'(x)) for a quartic ``f``, as a cubic in z.

    Evaluated at the four points in RESULTANT_POINTS and interpolated; the
    interpolant is cross-checked against a direct determinant at CHECK_POINT.
    """
    if f.degree != 4:
        raise DomainError(f"resultant_in_z needs a quartic, got degree {f.degree}")
    df = f.derivative()
    values = [resultant(f + z, df) for z in RESULTANT_POINTS]
    coeffs = _interpolate(RESULTANT_POINTS, values)
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("resultant interpolation produced a non-integer coefficient")
    D = IntPoly([int(c) for c in coeffs], var="z")
    if D(CHECK_POINT) != resultant(f + CHECK_POINT, df):
        raise ArithmeticError("interpolated resultant disagrees with the check point")
    return D


def _interpolate(xs, ys):
    """Lagrange interpolation; coefficients (low first) as Fractions."""
    n = len(xs)
    total = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            # basis *= (z - xj)
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            total[k] += basis[k] * yi / denom
    return total


# -- repeated roots --------------------------------------------------------


@dataclass(frozen=True)
class DoubleRoot:
    """Repeated root z0 = A / B**2 of D(z), with ``gcd(A, B) == 1`` and ``B > 0``."""

    A: int
    B: int
    multiplicity: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.A, self.B * self.B)


def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder of ``a`` by ``b``."""
    r = list(a.coeffs)
    db, lc = b.degree, b.lc
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        top = r[-1]
        r = [lc * c for c in r]
        for j, c in enumerate(b.coeffs):
            r[k + j] -= top * c
        while r and r[-1] == 0:
            r.pop()
    return IntPoly(r, a.var)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Q[x] via the primitive remainder sequence."""
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        a, b = b, _prem(a, b).primitive()
    return a.primitive()


def rational_double_root(D: IntPoly) -> DoubleRoot | None:
    """The repeated rational root of a cubic D(z), if any.

    Returns None when D is squarefree or its repeated root is irrational.
    Raises :class:`DenominatorNotSquare` when the root p/q exists but q is
    not a perfect square.
    """
    if D.degree != 3:
        raise DomainError(f"expected a cubic in z, got degree {D.degree}")
    g = poly_gcd(D.primitive(), D.derivative())
    if g.degree < 1:
        return None
    if g.degree == 1:
        num, den = -g[0], g[1]
        mult = 2
    else:
        # gcd of degree 2 means D = c*(qz - p)**3 and g = (qz - p)**2
        num, den = -g[1], 2 * g[2]
        mult = 3
    h = math.gcd(num, den)
    num, den = num // h, den // h
    if den < 0:
        num, den = -num, -den
    # Sanity: the candidate must really be a root of D.
    if D(Fraction(num, den)) != 0:
        return None
    B = as_perfect_square(den)
    if B is None:
        raise DenominatorNotSquare(num, den)
    return DoubleRoot(num, B, mult)


# -- square roots and integer roots ----------------------------------------


def poly_square_root(p: IntPoly) -> IntPoly | None:
    """Return ``r`` with ``r*r == p`` and ``r.lc > 0``, or None."""
    if not p:
        return p
    n = p.degree
    if n % 2:
        return None
    top = as_perfect_square(p.lc)
    if top is None:
        return None
    m = n // 2
    r = [0] * (m + 1)
    r[m] = top
    two_top = 2 * top
    for k in range(m - 1, -1, -1):
        # coefficient of x^(m+k) in r*r, minus the 2*r[m]*r[k] term
        s = sum(r[i] * r[m + k - i] for i in range(k + 1, m))
        num = p[m + k] - s
        if num % two_top:
            return None
        r[k] = num // two_top
    root = IntPoly(r, p.var)
    return root if root * root == p else None


def integer_roots(p: IntPoly, budget: float | None = None) -> list[int]:
    """Distinct integer roots of ``p``, ascending."""
    if not p:
        raise DomainError("the zero polynomial has every integer as a root")
    shift = 0
    while p[shift] == 0:
        shift += 1
    roots = [0] if shift else []
    q = IntPoly(p.coeffs[shift:], p.var)
    if q.degree >= 1:
        for d in positive_divisors(q[0], budget):
            if q(d) == 0:
                roots.append(d)
            if q(-d) == 0:
                roots.append(-d)
    return sorted(roots)
