"""Exact arithmetic: Laurent polynomials, integer/Laurent matrices, rationals."""
from .laurent import (
    LaurentPoly,
    divides,
    gcd_all,
    laurent_add,
    laurent_gcd,
    laurent_mul,
    laurent_normalize,
    poly_exact_div,
)
from .matrix import (
    LaurentMatrix,
    SizeLimitError,
    SmithForm,
    int_det,
    laurent_det,
    minor_size_limit,
    minors_gcd,
    smith_normal_form,
)
from .rational import (
    Rational,
    as_rational,
    format_rational,
    in_localized_ring,
    prime_factors,
    rational_add,
    rational_compare,
    rational_invert,
    rational_mul,
)

__all__ = [
    "LaurentPoly", "LaurentMatrix", "SizeLimitError", "SmithForm", "Rational",
    "as_rational", "divides", "format_rational", "gcd_all", "in_localized_ring",
    "int_det", "laurent_add", "laurent_det", "laurent_gcd", "laurent_mul",
    "laurent_normalize", "minor_size_limit", "minors_gcd", "poly_exact_div",
    "prime_factors", "rational_add", "rational_compare", "rational_invert",
    "rational_mul", "smith_normal_form",
]
