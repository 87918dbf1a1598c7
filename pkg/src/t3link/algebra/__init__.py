"""Exact algebra: integer Smith form, Q(zeta_d), Laurent polynomials."""

from .cyclotomic import Cyclo, cyclo_arith, cyclotomic_polynomial, euler_phi
from .laurent import (
    LaurentPoly,
    laurent_arith,
    laurent_gcd,
    render_laurent,
    unit_equivalent,
    unit_normalize,
)
from .matrices import (
    determinant,
    size_k_minors,
    univariate_invariant_factors,
    univariate_minor_gcd,
)
from .smith import IntMatrix, SmithDecomposition, int_det, invariant_factors, smith_normal_form

__all__ = [
    "Cyclo",
    "IntMatrix",
    "LaurentPoly",
    "SmithDecomposition",
    "cyclo_arith",
    "cyclotomic_polynomial",
    "determinant",
    "euler_phi",
    "int_det",
    "invariant_factors",
    "laurent_arith",
    "laurent_gcd",
    "render_laurent",
    "size_k_minors",
    "smith_normal_form",
    "unit_equivalent",
    "unit_normalize",
    "univariate_invariant_factors",
    "univariate_minor_gcd",
]
