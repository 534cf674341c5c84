"""Exact analyzer for Darboux first integrals built from curves with one
place at infinity, via blow-up reduction over the line at infinity."""

from .config import AnalysisOptions
from .errors import (
    BudgetExceeded,
    DarbouxError,
    DegenerateInfinity,
    InputError,
    NonInvertible,
    PrecisionExhausted,
    ShearFailure,
    UnsupportedAlgebraicPoint,
)
from .fields import ConstantSymbol, FieldElement, Interval, Tower
from .integrals import (
    AnalysisResult,
    DarbouxIntegral,
    ZeroOutcome,
    candidate_curves,
    extended_report,
    first_integral,
    rho_matrix,
    solve_exponents,
)
from .inputlang import InputDocument, parse
from .poly import Polynomial, exact_divide, linear_point_factors, poly_gcd, resultant
from .projective import AffineSystem, ProjectiveOneForm, affinize_at, cofactor, projectivize
from .reduction import CFExpansion, classify, continued_fraction, prox_of, seidenberg_over_infinity
from .synth import DpwaiSpec, build_form, check_one_place, random_one_place_curve, random_spec

__all__ = [
    "AnalysisOptions",
    "AnalysisResult",
    "AffineSystem",
    "BudgetExceeded",
    "CFExpansion",
    "ConstantSymbol",
    "DarbouxError",
    "DarbouxIntegral",
    "DegenerateInfinity",
    "DpwaiSpec",
    "FieldElement",
    "InputDocument",
    "InputError",
    "Interval",
    "NonInvertible",
    "Polynomial",
    "PrecisionExhausted",
    "ProjectiveOneForm",
    "ShearFailure",
    "Tower",
    "UnsupportedAlgebraicPoint",
    "ZeroOutcome",
    "affinize_at",
    "build_form",
    "candidate_curves",
    "check_one_place",
    "classify",
    "cofactor",
    "continued_fraction",
    "exact_divide",
    "extended_report",
    "first_integral",
    "linear_point_factors",
    "parse",
    "poly_gcd",
    "projectivize",
    "prox_of",
    "random_one_place_curve",
    "random_spec",
    "resultant",
    "rho_matrix",
    "seidenberg_over_infinity",
    "solve_exponents",
]

__version__ = "0.1.0"
