"""Complete integer points on quartic and sextic hyperelliptic curve families."""

from ._kernels import BACKEND
from .errors import (
    CurveError,
    DenominatorNotSquare,
    DomainError,
    FactorizationIncomplete,
    MethodInapplicable,
)
from .intarith import (
    Factorization,
    as_perfect_square,
    factorize,
    is_probable_prime,
    isqrt,
    signed_divisor_pairs,
)
from .oracle import ScanRange, cross_check, scan
from .poly import IntPoly, integer_roots, poly_square_root, rational_double_root, resultant_in_z
from .solvers import (
    CurveSpec,
    Family1,
    Family2,
    Family3,
    GeneralQuartic,
    IntegerPoint,
    MasserBiquadratic,
    Sextic,
    SolutionSet,
    bound_family1,
    solve,
    solve_family1,
    solve_family2,
    solve_family3,
    solve_general_quartic,
    solve_masser_biquadratic,
    solve_sextic,
)

__version__ = "0.1.0"
