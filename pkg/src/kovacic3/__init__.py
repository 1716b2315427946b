"""Exact classification of third-order differential Galois groups over Q(z)
and construction of Liouvillian solutions.

The engine decides the reducible / imprimitive / primitive trichotomy for
L = a3 Dz^3 + a2 Dz^2 + a1 Dz + a0 with rational coefficients, identifies
the finite solvable groups through semi-invariant searches, and returns the
solutions as Riccati polynomials or as pullbacks and gauge transformations
of algebraic generalized hypergeometric equations.

Quick start::

    from kovacic3 import parse_operator, kovacic_order3
    L = parse_operator("Dz^3 + (1/2)*(7*z-4)/(z*(z-1))*Dz^2"
                       " + (1/27)*(41*z-6)/(z^2*(z-1))*Dz - (2/729)/(z^2*(z-1))")
    sol = kovacic_order3(L)
    sol.classification.tag        # 'Imprimitive'
    sol.riccati[0]                # the monic Riccati cubic

The command line mirrors this: ``python -m kovacic3 solve "<operator>"``.
"""

from .classify import (
    GaloisClassification,
    SolutionSet,
    classify_galois_group,
    first_order_right_factors,
    hyperexponential_solutions,
    kovacic_order3,
    reducibility_test,
)
from .cli import main, parse_operator, run_pipeline
from .diffop import DiffOp
from .errors import Kovacic3Error
from .hypergeom import Hypergeometric3F2
from .localdata import (
    PuiseuxBasis,
    SingularPoint,
    frobenius_basis,
    is_fuchsian,
    local_exponents,
    series_basis,
    singular_points,
)
from .multipoly import MultiPoly
from .pullbacks import (
    A5Solution,
    PullbackSolution,
    gauge_equivalent_value,
    pullback_solution,
    pullback_solution_a5,
)
from .rationals import QQ, qq
from .ratfunc import RatFunc
from .riccati import (
    RiccatiPolynomial,
    produce_riccati_polynomial,
    riccati_solution_imprimitive,
)
from .semiinv import (
    SemiInvariantWitness,
    enumerate_hyperexp_candidates,
    hyperexp_part_candidate_count,
    monomial_bound,
    rational_bound,
    rational_solutions,
    semi_invariants,
    values_of_semi_invariant,
)
from .series import Series
from .unipoly import UniPoly, poly_gcd
from .verify import verify_pullback, verify_riccati

__version__ = "1.0.0"

__all__ = [
    "QQ",
    "qq",
    "UniPoly",
    "RatFunc",
    "MultiPoly",
    "Series",
    "DiffOp",
    "poly_gcd",
    "SingularPoint",
    "PuiseuxBasis",
    "singular_points",
    "local_exponents",
    "is_fuchsian",
    "series_basis",
    "frobenius_basis",
    "SemiInvariantWitness",
    "semi_invariants",
    "values_of_semi_invariant",
    "rational_solutions",
    "rational_bound",
    "monomial_bound",
    "enumerate_hyperexp_candidates",
    "hyperexp_part_candidate_count",
    "GaloisClassification",
    "SolutionSet",
    "classify_galois_group",
    "kovacic_order3",
    "reducibility_test",
    "first_order_right_factors",
    "hyperexponential_solutions",
    "RiccatiPolynomial",
    "produce_riccati_polynomial",
    "riccati_solution_imprimitive",
    "PullbackSolution",
    "A5Solution",
    "pullback_solution",
    "pullback_solution_a5",
    "gauge_equivalent_value",
    "Hypergeometric3F2",
    "verify_riccati",
    "verify_pullback",
    "parse_operator",
    "run_pipeline",
    "main",
    "Kovacic3Error",
]
