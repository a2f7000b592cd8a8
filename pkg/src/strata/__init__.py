"""Exact computation of Whitney (a) stratifications over the rationals.

The kernel is layered: sparse polynomial arithmetic with exact rational
coefficients (``polyring``), Groebner bases and ideal membership
(``groebner``), ideal operations -- intersection, quotient, saturation,
elimination (``idealops``), polynomial factorization (``factor``), minimal
prime decomposition with certification (``decomp``), and the geometric
layer: conormal spaces, dual varieties, singular loci, Whitney (a)
regularity of nested strata, the stratification driver, and the affine
boundary report for convex semi-algebraic sets (``stratify``).  ``cli``
wraps everything behind a small JSON job format.
"""

from .errors import (
    BudgetExceededError,
    JobError,
    MathPreconditionError,
    ParseInputError,
    RingMismatchError,
    StrataError,
)
from .polyring import (
    GREVLEX,
    LEX,
    BlockOrder,
    GrevLex,
    GrevLexLast,
    Lex,
    Polynomial,
    RingContext,
)
from .groebner import (
    ComputationBudget,
    GroebnerBasis,
    Ideal,
    dimension,
    groebner_basis,
    ideal_equal,
)
from .idealops import (
    PolyMatrix,
    eliminate,
    ideal_intersection,
    ideal_quotient,
    ideal_sum,
    minors_ideal,
    projectively_empty,
    radical_membership,
    saturate_variable,
    saturation,
)
from .factor import (
    Factorization,
    factor_multivariate,
    factor_univariate,
    is_irreducible,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
)
from .decomp import (
    PrimeComponent,
    minimal_primes,
    radical_ideal,
    remove_redundant,
    verify_decomposition,
)
from .stratify import (
    BoundaryReport,
    ConormalIdeal,
    StratificationLevels,
    WhitneyPairReport,
    as_component,
    boundary_candidates,
    conormal_ideal,
    dual_variety,
    singular_locus,
    whitney_a_holds,
    whitney_a_irregular,
    whitney_a_stratify,
)

__all__ = [
    "BlockOrder",
    "BoundaryReport",
    "BudgetExceededError",
    "ComputationBudget",
    "ConormalIdeal",
    "Factorization",
    "GREVLEX",
    "GrevLex",
    "GrevLexLast",
    "GroebnerBasis",
    "Ideal",
    "JobError",
    "LEX",
    "Lex",
    "MathPreconditionError",
    "ParseInputError",
    "PolyMatrix",
    "Polynomial",
    "PrimeComponent",
    "RingContext",
    "RingMismatchError",
    "StrataError",
    "StratificationLevels",
    "WhitneyPairReport",
    "as_component",
    "boundary_candidates",
    "conormal_ideal",
    "dimension",
    "dual_variety",
    "eliminate",
    "factor_multivariate",
    "factor_univariate",
    "groebner_basis",
    "ideal_equal",
    "ideal_intersection",
    "ideal_quotient",
    "ideal_sum",
    "is_irreducible",
    "minimal_primes",
    "minors_ideal",
    "poly_gcd",
    "projectively_empty",
    "radical_ideal",
    "radical_membership",
    "remove_redundant",
    "saturate_variable",
    "saturation",
    "singular_locus",
    "squarefree_decomposition",
    "squarefree_part",
    "verify_decomposition",
    "whitney_a_holds",
    "whitney_a_irregular",
    "whitney_a_stratify",
]

__version__ = "0.1.0"
