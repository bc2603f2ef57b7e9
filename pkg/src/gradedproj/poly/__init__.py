"""Exact polynomial arithmetic over Q, Groebner bases, saturation."""

from .groebner import (
    IdealBasis,
    ModuleBasis,
    groebner_basis,
    module_normal_form,
    module_saturate,
    normal_form,
    saturate,
)
from .linsolve import solve_rational
from .parsing import PolynomialSyntaxError, parse_polynomial
from .polynomial import (
    GREVLEX,
    LEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    VariableMismatch,
    elimination_order,
)

__all__ = [
    "GREVLEX",
    "LEX",
    "IdealBasis",
    "ModuleBasis",
    "Monomial",
    "MonomialOrder",
    "Polynomial",
    "PolynomialSyntaxError",
    "VariableMismatch",
    "elimination_order",
    "groebner_basis",
    "module_normal_form",
    "module_saturate",
    "normal_form",
    "parse_polynomial",
    "saturate",
    "solve_rational",
]
