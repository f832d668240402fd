"""Exact Moyal calculus: polynomials, star products, Weyl map, star-differential operators."""
from .scalar import ONE, ZERO, I, Scalar, as_scalar
from .poly import PolyExpr
from .theta import ThetaMatrix, multiparticle_theta, theta_2d
from .star import (
    StarPoly,
    inverse_weyl,
    moyal_star,
    ordered_star_monomial,
    star_commutator,
    star_power,
    weyl_normal_form,
)
from .operators import StarOperator, op_adjoint, op_apply, op_compose
from .printing import format_poly
from .parse import ParseError, parse_expression

__all__ = [
    "Scalar", "as_scalar", "ZERO", "ONE", "I",
    "PolyExpr", "ThetaMatrix", "multiparticle_theta", "theta_2d",
    "moyal_star", "star_commutator", "star_power",
    "StarPoly", "weyl_normal_form", "inverse_weyl", "ordered_star_monomial",
    "StarOperator", "op_compose", "op_apply", "op_adjoint",
    "format_poly", "parse_expression", "ParseError",
]
