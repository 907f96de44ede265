"""Exception hierarchy shared by the arithmetic, polynomial and solver layers."""


class DomainError(ValueError):
    """An argument violates an operation's precondition."""


class CurveError(DomainError):
    """Curve parameters give a perfect-square or degenerate right-hand side."""


class FactorizationIncomplete(ArithmeticError):
    """Factoring gave up before certifying every prime factor.

    ``partial`` holds the ``(prime, exponent)`` pairs already found and
    ``remaining`` the composite cofactors left unsplit.
    """

    def __init__(self, n, partial, remaining):
        self.n = n
        self.partial = sorted(partial)
        self.remaining = sorted(remaining)
        super().__init__(
            f"incomplete factorization of {n}: "
            f"{len(self.remaining)} composite cofactor(s) left unsplit"
        )


class DenominatorNotSquare(DomainError):
    """The repeated root ``p/q`` of D(z) has a denominator that is not a square."""

    def __init__(self, p, q):
        self.p = p
        self.q = q
        super().__init__(f"denominator not square: repeated root {p}/{q}")


class MethodInapplicable(Exception):
    """The double-root reduction does not apply to this quartic.

    Distinct from an empty solution set: the curve may well have integer
    points, this method just cannot enumerate them.
    """
