"""Exact containment checks between symbolic and ordinary powers of ideals of points in P^2."""

from .arith import QQ, QQW, W, CycloElement, Rational
from .groebner import GroebnerBasis, buchberger, is_groebner, normal_form, s_polynomial
from .ideal import (
    Ideal,
    eliminate,
    graded_dim,
    graded_piece_basis,
    ideal_contains,
    ideal_equals,
    ideal_intersect,
    ideal_intersect_many,
    ideal_member,
    ideal_power,
    ideal_product,
    ideal_sum,
)
from .points import (
    Configuration,
    LineForm,
    ProjectivePoint,
    dual_hesse_config,
    dual_hesse_lines,
    point_ideal,
    radical_ideal,
    random_rational_config,
    star_configuration,
    symbolic_power,
    vanishing_order_at_least,
)
from .poly import GREVLEX, LEX, Polynomial, RingDescriptor, TermOrder, elim, parse_polynomial
from .verify import run_all

__version__ = "0.1.0"
