"""Invariants of finitely presented groups along infinite cyclic covers,
and exact models of generalized Thompson groups."""
from .covers import (
    cyclic_cover_presentation,
    free_kernel_rank,
    kernel_cover,
    rank_gradient_sequence,
    rank_lower_bound,
    tietze_simplify,
)
from .exactalg import LaurentPoly, minors_gcd, smith_normal_form
from .fox import alexander_matrix, alexander_polynomial, fox_derivative, hnn_end_test
from .plgroup import GroupSpec, PLMap, independence_certificate
from .presentations import (
    CyclicClass,
    FreeWord,
    HNNData,
    Presentation,
    ensure_stable_generator,
    hnn_presentation,
    parse_presentation,
    word,
)

__version__ = "0.1.0"
