"""Complete integer-point solvers for quartic and sextic curve families.

Each solver turns ``y**2 = f(x)`` into a factorization ``(r(x) - s*y) *
(r(x) + s*y) = N`` with a fixed nonzero integer ``N``, walks the divisor
pairs of ``N`` and solves the resulting low-degree equations for ``x``.
Every point is checked by substitution before it is returned.

Families (``y >= 0`` throughout):

* ``Family1(a, b, k)``: y^2 = (x+a)(x+a+k)(x+b)(x+b+k)
* ``Family2(c, a, b)``: y^2 = c^2 x^4 + a x^2 + b
* ``Family3(c, a, b)``: c y^2 = c x^4 + a x^2 + b
* ``Sextic(alpha)``: y^2 = (x^2-1)(x^2-alpha^2)(x^2-(alpha+1)^2)
* ``GeneralQuartic(a3, a2, a1, a0)``: y^2 = x^4 + a3 x^3 + a2 x^2 + a1 x + a0
* ``MasserBiquadratic(b, d)``: y^2 = x^4 + b x^2 + d
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import ClassVar, NamedTuple

from . import _kernels
from .errors import CurveError, DenominatorNotSquare, DomainError, MethodInapplicable
from .intarith import (
    Factorization,
    as_perfect_square,
    factorize,
    is_probable_prime,
    isqrt,
    signed_divisor_pairs,
)
from .poly import (
    IntPoly,
    integer_roots,
    poly_square_root,
    rational_double_root,
    resultant_in_z,
)

X = IntPoly([0, 1])


# -- curve descriptions ----------------------------------------------------


@dataclass(frozen=True)
class CurveSpec:
    """Base class: ``lhs_coeff * y**2 == rhs(x)``."""

    family: ClassVar[str] = ""

    def params(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @property
    def lhs_coeff(self) -> int:
        return 1

    def rhs(self) -> IntPoly:
        raise NotImplementedError

    def satisfied(self, x: int, y: int) -> bool:
        return self.lhs_coeff * y * y == self.rhs()(x)

    def equation(self) -> str:
        lhs = "y^2" if self.lhs_coeff == 1 else f"{self.lhs_coeff}*y^2"
        return f"{lhs} = {self.rhs()}"

    def __post_init__(self):
        for f in fields(self):
            if not isinstance(getattr(self, f.name), int):
                raise DomainError(f"{self.family}: parameter {f.name} must be an integer")
        self.validate()

    def validate(self):
        pass


@dataclass(frozen=True)
class Family1(CurveSpec):
    family: ClassVar[str] = "family1"
    a: int
    b: int
    k: int

    def validate(self):
        if self.a == self.b:
            raise CurveError("family1: a == b makes the right-hand side a perfect square")
        if self.k == 0:
            raise CurveError("family1: k == 0 makes the right-hand side a perfect square")

    def rhs(self):
        a, b, k = self.a, self.b, self.k
        return (X + a) * (X + a + k) * (X + b) * (X + b + k)


@dataclass(frozen=True)
class Family2(CurveSpec):
    family: ClassVar[str] = "family2"
    c: int
    a: int
    b: int

    def validate(self):
        if self.c == 0:
            raise CurveError("family2: c must be nonzero")
        if self.delta == 0:
            raise CurveError("family2: a^2 - 4*b*c^2 == 0 makes the right-hand side a perfect square")

    @property
    def delta(self) -> int:
        return self.a * self.a - 4 * self.b * self.c * self.c

    def rhs(self):
        return IntPoly([self.b, 0, self.a, 0, self.c * self.c])


@dataclass(frozen=True)
class Family3(CurveSpec):
    family: ClassVar[str] = "family3"
    c: int
    a: int
    b: int

    def validate(self):
        if self.c == 0:
            raise CurveError("family3: c must be nonzero")
        if self.delta == 0:
            raise CurveError("family3: a^2 - 4*b*c == 0 makes the equation degenerate")

    @property
    def delta(self) -> int:
        return self.a * self.a - 4 * self.b * self.c

    @property
    def lhs_coeff(self):
        return self.c

    def rhs(self):
        return IntPoly([self.b, 0, self.a, 0, self.c])


@dataclass(frozen=True)
class Sextic(CurveSpec):
    family: ClassVar[str] = "sextic"
    alpha: int

    def validate(self):
        if self.alpha in (-2, -1, 0, 1):
            raise CurveError(
                f"sextic: alpha={self.alpha} repeats a factor of the right-hand side (degenerate)"
            )

    def rhs(self):
        al = self.alpha
        return (X * X - 1) * (X * X - al * al) * (X * X - (al + 1) ** 2)


@dataclass(frozen=True)
class GeneralQuartic(CurveSpec):
    family: ClassVar[str] = "quartic"
    a3: int
    a2: int
    a1: int
    a0: int

    def validate(self):
        if poly_square_root(self.rhs()) is not None:
            raise CurveError("quartic: the right-hand side is the square of a polynomial")

    def rhs(self):
        return IntPoly([self.a0, self.a1, self.a2, self.a3, 1])


@dataclass(frozen=True)
class MasserBiquadratic(CurveSpec):
    family: ClassVar[str] = "masser"
    b: int
    d: int

    def validate(self):
        if self.b * self.b == 4 * self.d:
            raise CurveError("masser: b^2 == 4d makes the right-hand side a perfect square")

    def rhs(self):
        return IntPoly([self.d, 0, self.b, 0, 1])


SPEC_TYPES = {
    cls.family: cls
    for cls in (Family1, Family2, Family3, Sextic, GeneralQuartic, MasserBiquadratic)
}


def spec_from_dict(data: dict) -> CurveSpec:
    cls = SPEC_TYPES[data["family"]]
    return cls(**{f.name: int(data[f.name]) for f in fields(cls)})


# -- results ---------------------------------------------------------------


class IntegerPoint(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class SolutionSet:
    """Sorted, deduplicated integer points with ``y >= 0``.

    ``meta`` records ``divisor_pairs`` (pairs examined), ``factored_integer``
    (the N whose divisors were walked) and ``factorization``.
    """

    spec: CurveSpec | None
    points: tuple[IntegerPoint, ...]
    meta: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, item):
        return tuple(item) in set(self.points)

    def to_dict(self) -> dict:
        meta = {}
        if "divisor_pairs" in self.meta:
            meta["divisor_pairs"] = self.meta["divisor_pairs"]
        fac = self.meta.get("factorization")
        if fac is not None:
            meta["tau"] = fac.tau
            meta["factored_integer"] = str(self.meta["factored_integer"])
            meta["factorization"] = [[str(p), e] for p, e in fac.factors]
        return {
            "spec": None
            if self.spec is None
            else {"family": self.spec.family, **{k: str(v) for k, v in self.spec.params().items()}},
            "points": [{"x": str(p.x), "y": str(p.y)} for p in self.points],
            "meta": meta,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SolutionSet":
        spec = None if data["spec"] is None else spec_from_dict(data["spec"])
        points = tuple(IntegerPoint(int(p["x"]), int(p["y"])) for p in data["points"])
        raw = data.get("meta", {})
        meta = {}
        if "divisor_pairs" in raw:
            meta["divisor_pairs"] = raw["divisor_pairs"]
        if "factorization" in raw:
            n = int(raw["factored_integer"])
            meta["factored_integer"] = n
            meta["factorization"] = Factorization(
                abs(n), tuple((int(p), int(e)) for p, e in raw["factorization"])
            )
        return cls(spec, points, meta)


def _finish(spec, candidates, N, pairs_examined, budget):
    pts = set()
    for x, y in candidates:
        y = abs(y)
        if not spec.satisfied(x, y):
            raise AssertionError(f"{spec.family}: candidate ({x}, {y}) fails substitution")
        pts.add(IntegerPoint(x, y))
    meta = {
        "divisor_pairs": pairs_examined,
        "factored_integer": N,
        "factorization": factorize(N, budget),
    }
    return SolutionSet(spec, tuple(sorted(pts)), meta)


# -- family solvers --------------------------------------------------------


def bound_family1(a: int, b: int, k: int) -> int:
    """Every integer point of family 1 has ``|x| < 4*M**2``, M = max(|a|,|b|,|k|)."""
    M = max(abs(a), abs(b), abs(k))
    return 4 * M * M


def solve_family1(a: int, b: int, k: int, budget: float | None = None) -> SolutionSet:
    """All integer points on y^2 = (x+a)(x+a+k)(x+b)(x+b+k).

    With r(x) = 2x^2 + 2(a+b+k)x + 2ab + ka + kb one has
    4 f(x) = r(x)^2 - (k(a-b))^2, so r - 2y and r + 2y are complementary
    divisors of (k(a-b))^2.
    """
    spec = Family1(a, b, k)
    N = (k * (a - b)) ** 2
    B = 2 * (a + b + k)
    base = 2 * a * b + k * a + k * b
    pairs = signed_divisor_pairs(N, budget)
    cands = []
    for d1, d2 in pairs:
        if (d1 - d2) & 1:
            continue
        if (d2 - d1) % 4:
            continue
        C = base - (d1 + d2) // 2
        root = as_perfect_square(B * B - 8 * C)
        if root is None:
            continue
        y = (d2 - d1) // 4
        for num in (-B + root, -B - root):
            if num % 4 == 0:
                cands.append((num // 4, y))
    return _finish(spec, cands, N, len(pairs), budget)


# Above this many divisors the biquadratic walk goes through the residue
# sieve instead of materializing every pair.
SIEVE_MIN_TAU = 1 << 12
SIEVE_MODULI = 48


def _sieve_moduli(N, c_sq, count=SIEVE_MODULI):
    out = []
    q = 3
    while len(out) < count:
        if N % q and c_sq % q and is_probable_prime(q):
            out.append(q)
        q += 2
    return out


def _sieved_pairs(fac, N, c_sq, a):
    """Divisor pairs of ``N`` that can give a square ``(d1+d2-2a)/(4 c_sq)``.

    For each small prime ``q`` coprime to ``N`` the sum ``d + N/d`` depends
    only on ``d mod q``; a pair is kept when its scaled numerator is a
    square mod every ``q``. Bit 0 of the mask is the pair ``(d, N/d)``,
    bit 1 is ``(-d, -N/d)``. Only a necessary condition: callers re-check.
    """
    primes = [p for p, _ in fac.factors]
    moduli = _sieve_moduli(N, c_sq)
    ok = []
    for q in moduli:
        squares = {t * t % q for t in range(q)}
        inv = pow(4 * c_sq, -1, q)
        table = bytearray(q)
        for r in range(1, q):
            t = (r + N * pow(r, -1, q)) % q
            table[r] = ((t - 2 * a) * inv % q in squares) | (
                ((-t - 2 * a) * inv % q in squares) << 1
            )
        ok.append(bytes(table))
    pres = [[p % q for q in moduli] for p in primes]
    exps = [e for _, e in fac.factors]
    for ks, mask in _kernels.sieve_divisors(exps, pres, moduli, ok):
        d = 1
        for p, k in zip(primes, ks):
            d *= p**k
        e = N // d
        if mask & 1:
            yield d, e
        if mask & 2:
            yield -d, -e


def _pair_count(N, fac):
    """Number of signed pairs ``d1 <= d2`` with ``d1 * d2 == N``."""
    return fac.tau + (1 if N > 0 and as_perfect_square(N) is not None else 0)


def _biquadratic(spec, c_sq, a, delta, y_div, budget):
    """Shared walk for r(x) = 2*c_sq*x^2 + a with (r - s y)(r + s y) = delta."""
    fac = factorize(delta, budget)
    if fac.tau > SIEVE_MIN_TAU:
        pairs = _sieved_pairs(fac, delta, c_sq, a)
    else:
        pairs = signed_divisor_pairs(delta, budget)
    den = 4 * abs(c_sq)
    cands = []
    for d1, d2 in pairs:
        if (d1 - d2) & 1:
            continue
        num = d1 + d2 - 2 * a
        if c_sq < 0:
            num = -num
        if num < 0 or num % den:
            continue
        m = as_perfect_square(num // den)
        if m is None:
            continue
        if (d2 - d1) % y_div:
            continue
        y = (d2 - d1) // y_div
        cands.extend(((m, y), (-m, y)))
    return _finish(spec, cands, delta, _pair_count(delta, fac), budget)


def solve_family2(c: int, a: int, b: int, budget: float | None = None) -> SolutionSet:
    """All integer points on y^2 = c^2 x^4 + a x^2 + b.

    Here 4c^2 f(x) = (2c^2 x^2 + a)^2 - delta with delta = a^2 - 4bc^2.
    """
    spec = Family2(c, a, b)
    return _biquadratic(spec, c * c, a, spec.delta, 4 * abs(c), budget)


def solve_family3(c: int, a: int, b: int, budget: float | None = None) -> SolutionSet:
    """All integer points on c y^2 = c x^4 + a x^2 + b."""
    spec = Family3(c, a, b)
    return _biquadratic(spec, c, a, spec.delta, 4 * abs(c), budget)


def solve_sextic(alpha: int, budget: float | None = None) -> SolutionSet:
    """All integer points on y^2 = (x^2-1)(x^2-alpha^2)(x^2-(alpha+1)^2).

    f(x) + z0 = s(x)^2 with s(x) = x^3 - (alpha^2+alpha+1) x and
    z0 = (alpha^2+alpha)^2, so s(x) - y and s(x) + y multiply to z0.
    """
    spec = Sextic(alpha)
    N = (alpha * alpha + alpha) ** 2
    K = alpha * alpha + alpha + 1
    pairs = signed_divisor_pairs(N, budget)
    cands = []
    for d1, d2 in pairs:
        if (d1 - d2) & 1:
            continue
        t = (d1 + d2) // 2
        y = (d2 - d1) // 2
        for x in integer_roots(IntPoly([-t, -K, 0, 1]), budget):
            cands.append((x, y))
    return _finish(spec, cands, N, len(pairs), budget)


def solve_general_quartic(
    a3: int, a2: int, a1: int, a0: int, budget: float | None = None
) -> SolutionSet:
    """Integer points on y^2 = x^4 + a3 x^3 + a2 x^2 + a1 x + a0.

    Needs a repeated root z0 = A/B^2 of D(z) = Res_x(f + z, f') such that
    B^2 f + A = r(x)^2 over the integers; then (r - B y)(r + B y) = A.
    Raises :class:`MethodInapplicable` when any of that fails.
    """
    spec = GeneralQuartic(a3, a2, a1, a0)
    f = spec.rhs()
    D = resultant_in_z(f)
    try:
        root = rational_double_root(D)
    except DenominatorNotSquare as exc:
        raise MethodInapplicable(
            f"method inapplicable: repeated root {exc.p}/{exc.q} has a non-square denominator"
        ) from exc
    if root is None:
        raise MethodInapplicable("method inapplicable: D(z) has no rational double root")
    A, B = root.A, root.B
    if A == 0:
        raise CurveError("quartic: f is a rational square")
    r = poly_square_root(f.scale(B * B) + A)
    if r is None:
        raise MethodInapplicable("method inapplicable: B²f+A is not a polynomial square")
    pairs = signed_divisor_pairs(A, budget)
    cands = []
    for e1, e2 in pairs:
        if (e1 + e2) & 1 or (e2 - e1) % (2 * B):
            continue
        t = (e1 + e2) // 2
        y = (e2 - e1) // (2 * B)
        for x in integer_roots(r - t, budget):
            cands.append((x, y))
    result = _finish(spec, cands, A, len(pairs), budget)
    result.meta["double_root"] = root
    result.meta["square_root"] = r
    return result


def masser_identity(a: int, b: int, c: int, d: int) -> tuple[IntPoly, int, int]:
    """For f = x^4 + a x^3 + b x^2 + c x + d return (Q, C, D) with
    64 f - Q^2 = C x + D."""
    e = 4 * b - a * a
    C = 64 * c - 8 * a * e
    D = 64 * d - e * e
    Q = IntPoly([e, 4 * a, 8])
    return Q, C, D


def solve_masser_biquadratic(b: int, d: int, budget: float | None = None) -> SolutionSet:
    """All integer points on y^2 = x^4 + b x^2 + d.

    Uses 4 f - (2x^2 + b)^2 = 4d - b^2, i.e. (2y - u)(2y + u) = 4d - b^2
    with u = 2x^2 + b. Unlike the family 2 walk, u may have either sign,
    so both orders of every divisor pair are tried.
    """
    spec = MasserBiquadratic(b, d)
    Q, C, D = masser_identity(0, b, 0, d)
    assert C == 0 and D == 16 * (4 * d - b * b)
    E = 4 * d - b * b
    pairs = signed_divisor_pairs(E, budget)
    cands = []
    for p, q in pairs:
        for e1, e2 in {(p, q), (q, p)}:
            # e1 = 2y - u, e2 = 2y + u
            if (e1 + e2) % 4 or (e2 - e1) % 2:
                continue
            y = (e1 + e2) // 4
            u = (e2 - e1) // 2
            if y < 0 or (u - b) % 2:
                continue
            m = as_perfect_square((u - b) // 2)
            if m is not None:
                cands.extend(((m, y), (-m, y)))
    return _finish(spec, cands, E, len(pairs), budget)


# -- dispatch --------------------------------------------------------------

SOLVERS = {
    "family1": solve_family1,
    "family2": solve_family2,
    "family3": solve_family3,
    "sextic": solve_sextic,
    "quartic": solve_general_quartic,
    "masser": solve_masser_biquadratic,
}


def solve(spec: CurveSpec, budget: float | None = None) -> SolutionSet:
    return SOLVERS[spec.family](**spec.params(), budget=budget)


def oracle_bound(spec: CurveSpec) -> int:
    """A radius R such that every integer point has ``|x| <= R``."""
    if isinstance(spec, Family1):
        return bound_family1(spec.a, spec.b, spec.k)
    if isinstance(spec, (Family2, Family3)):
        den = 4 * (spec.c * spec.c if isinstance(spec, Family2) else abs(spec.c))
        return isqrt((abs(spec.delta) + 1 + 2 * abs(spec.a)) // den) + 1
    if isinstance(spec, MasserBiquadratic):
        return isqrt((abs(spec.b * spec.b - 4 * spec.d) + 1 + 2 * abs(spec.b)) // 4) + 1
    if isinstance(spec, Sextic):
        # roots of x^3 - K x - t with |t| <= (N + 1) / 2 (Cauchy bound)
        al = spec.alpha
        N = (al * al + al) ** 2
        return 1 + max(al * al + al + 1, (N + 1) // 2)
    if isinstance(spec, GeneralQuartic):
        f = spec.rhs()
        D = resultant_in_z(f)
        root = rational_double_root(D)
        r = poly_square_root(f.scale(root.B**2) + root.A)
        t_max = (abs(root.A) + 1) // 2
        lead = r.lc
        return 1 + max(abs(r[1]), abs(r[0]) + t_max) // lead
    raise TypeError(spec)
